"""Free-field systems and exact graded Fock bases.

A system is an ordered list of species together with an exact symmetric
pairing table on its Heisenberg block.  Species come in three kinds:

* ``heisenberg`` -- an even current h(z) with h(z)h'(w) ~ table(h,h')/(z-w)^2;
  engine weight is always 1.
* ``fermion-pair-half`` / ``boson-pair-half`` -- one half of a contracted pair
  (b with c, beta with gamma).  The half listed first in a pair contracts onto
  its partner with +1, the second half with +1 (fermions) or -1 (bosons),
  matching first-order-pole OPE a(z)a*(w) ~ 1/(z-w).

Fock states are PBW monomials of creation modes on a momentum vector |mu>.
A mode is (species, depth) with depth d >= 1 standing for the physical mode
index -d; its engine degree is depth - 1 + engine_weight(species).  Canonical
order is species registration order, then depth descending; the sign picked up
by sorting counts odd-odd transpositions.  A Momentum stores the zero-mode
eigenvalue of every Heisenberg species directly, plus an integer lattice label
for systems carrying a lattice decomposition (the label feeds the two-cocycle
and parity; its bilinear form is the integer Gram declared at registration).

Enumeration is exact and finite unless the system contains a weight-0 boson
half (then every slice is infinite and NonEnumerable is raised).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import AsymmetricPairing, NonEnumerable, ResourceBound, UnpairedFermionHalf
from .scalars import Scalar, sc_is_zero

EVEN, ODD = "even", "odd"
HEIS, FERMION_HALF, BOSON_HALF = "heisenberg", "fermion-pair-half", "boson-pair-half"


@dataclass(frozen=True)
class Species:
    name: str
    parity: str = EVEN
    kind: str = HEIS
    engine_weight: int = 1
    partner: Optional[str] = None

    @property
    def is_heis(self) -> bool:
        return self.kind == HEIS

    @property
    def odd(self) -> bool:
        return self.parity == ODD


def heis(name: str) -> Species:
    return Species(name, EVEN, HEIS, 1)


def fermion_pair(a: str, b: str, weights=(1, 0)):
    return (Species(a, ODD, FERMION_HALF, weights[0], b),
            Species(b, ODD, FERMION_HALF, weights[1], a))


def boson_pair(a: str, b: str, weights=(1, 0)):
    return (Species(a, EVEN, BOSON_HALF, weights[0], b),
            Species(b, EVEN, BOSON_HALF, weights[1], a))


@dataclass(frozen=True)
class Momentum:
    """Zero-mode eigenvalues per Heisenberg species, plus optional lattice label."""
    values: tuple
    lattice: Optional[tuple] = None

    def __add__(self, other: "Momentum") -> "Momentum":
        vals = tuple(a + b for a, b in zip(self.values, other.values))
        lat = None
        if self.lattice is not None or other.lattice is not None:
            la = self.lattice or (0,) * len(other.lattice)
            lb = other.lattice or (0,) * len(self.lattice)
            lat = tuple(x + y for x, y in zip(la, lb))
        return Momentum(vals, lat)

    def is_zero(self) -> bool:
        return all(sc_is_zero(v) for v in self.values) and not any(self.lattice or ())


@dataclass(frozen=True)
class FockState:
    """Canonical signed creation monomial over a registered system."""
    momentum: Momentum
    modes: tuple  # ((species_index, depth), ...) in canonical order
    sign: int = 1

    def key(self):
        return (self.momentum, self.modes)


class System:
    """A registered free-field system; immutable after construction."""

    def __init__(self, species, pairing, lattice_indices=None, lattice_gram=None):
        self.species = tuple(species)
        self.index = {s.name: i for i, s in enumerate(self.species)}
        if len(self.index) != len(self.species):
            raise UnpairedFermionHalf("duplicate species names")
        self.heis_indices = tuple(i for i, s in enumerate(self.species) if s.is_heis)
        self.heis_pos = {i: p for p, i in enumerate(self.heis_indices)}
        for s in self.species:
            if s.is_heis:
                if s.engine_weight != 1:
                    raise AsymmetricPairing(f"heisenberg species {s.name} must have weight 1")
                continue
            if s.partner is None or s.partner not in self.index:
                raise UnpairedFermionHalf(f"species {s.name} lacks its dual pair half")
            p = self.species[self.index[s.partner]]
            if p.partner != s.name or p.kind != s.kind:
                raise UnpairedFermionHalf(f"species {s.name} and {p.name} are not a dual pair")
        n = len(self.heis_indices)
        if len(pairing) != n or any(len(row) != n for row in pairing):
            raise AsymmetricPairing("pairing table must be square over the heisenberg species")
        for i in range(n):
            for j in range(n):
                if pairing[i][j] != pairing[j][i]:
                    raise AsymmetricPairing("pairing table must be symmetric")
        self.pairing = tuple(tuple(row) for row in pairing)
        self.lattice_indices = tuple(lattice_indices or ())
        self.lattice_gram = tuple(tuple(r) for r in (lattice_gram or ()))
        if self.lattice_indices:
            ln = len(self.lattice_indices)
            if len(self.lattice_gram) != ln or any(len(r) != ln for r in self.lattice_gram):
                raise AsymmetricPairing("lattice gram must be square over the lattice basis")
        self._basis_cache = {}

    # -- pair contraction sign: first-listed half hits partner with +1 --------

    def pair_sign(self, idx: int) -> int:
        s = self.species[idx]
        if s.kind == FERMION_HALF:
            return 1
        return 1 if idx < self.index[s.partner] else -1

    def pairing_of(self, i: int, j: int) -> Scalar:
        return self.pairing[self.heis_pos[i]][self.heis_pos[j]]

    # -- momenta ----------------------------------------------------------------

    def zero_momentum(self) -> Momentum:
        lat = (0,) * len(self.lattice_indices) if self.lattice_indices else None
        return Momentum((Fraction(0),) * len(self.heis_indices), lat)

    def momentum(self, values, lattice=None) -> Momentum:
        vals = tuple(values)
        if len(vals) != len(self.heis_indices):
            raise AsymmetricPairing("momentum length does not match heisenberg rank")
        if lattice is None and self.lattice_indices:
            lattice = (0,) * len(self.lattice_indices)
        return Momentum(vals, tuple(lattice) if lattice is not None else None)

    def lattice_momentum(self, label) -> Momentum:
        """Momentum of a lattice vector: eigenvalues from the integer Gram."""
        label = tuple(label)
        vals = [Fraction(0)] * len(self.heis_indices)
        for a, idx in enumerate(self.lattice_indices):
            vals[self.heis_pos[idx]] = Fraction(
                sum(self.lattice_gram[a][b] * label[b] for b in range(len(label))))
        return Momentum(tuple(vals), label)

    def momentum_value(self, mu: Momentum, species_idx: int) -> Scalar:
        return mu.values[self.heis_pos[species_idx]]

    def momentum_parity(self, mu: Momentum) -> int:
        if mu.lattice is None:
            return 0
        q = 0
        lab = mu.lattice
        for a in range(len(lab)):
            for b in range(len(lab)):
                q += self.lattice_gram[a][b] * lab[a] * lab[b]
        return q % 2

    def cocycle(self, shift_label, mu_label) -> int:
        """Two-cocycle epsilon(shift, mu), bimultiplicative from the basis table.

        Basis table: 1 above the diagonal, (-1)^(G_ij + G_ii G_jj) below, and
        (-1)^(G_ii (G_ii - 1)/2) on the diagonal.  The diagonal normalization
        makes the boson-fermion and beta-gamma bosonization contractions come
        out with coefficient +1.
        """
        if not self.lattice_indices or shift_label is None or mu_label is None:
            return 1
        e = 0
        G = self.lattice_gram
        for i in range(len(shift_label)):
            e += (G[i][i] * (G[i][i] - 1) // 2) * shift_label[i] * mu_label[i]
            for j in range(i):
                e += (G[i][j] + G[i][i] * G[j][j]) * shift_label[i] * mu_label[j]
        return -1 if e % 2 else 1

    # -- states ----------------------------------------------------------------

    def mode_degree(self, species_idx: int, depth: int) -> int:
        return depth - 1 + self.species[species_idx].engine_weight

    def state_degree(self, state: FockState) -> int:
        return sum(self.mode_degree(s, d) for s, d in state.modes)

    def state_parity(self, state: FockState) -> int:
        odd = sum(1 for s, _ in state.modes if self.species[s].odd)
        return (odd + self.momentum_parity(state.momentum)) % 2

    def vacuum(self, mu: Optional[Momentum] = None) -> FockState:
        return FockState(mu if mu is not None else self.zero_momentum(), ())

    def __repr__(self):
        return f"System({', '.join(s.name for s in self.species)})"


def register_system(species, pairing, lattice_indices=None, lattice_gram=None) -> System:
    return System(species, pairing, lattice_indices, lattice_gram)


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

def _mode_key(mode):
    s, d = mode
    return (s, -d)


def normal_form(sys: System, mu: Momentum, raw_modes, sign: int = 1) -> Optional[FockState]:
    """Canonically order a raw signed monomial; None encodes the zero vector."""
    modes = list(raw_modes)
    # insertion sort, tracking odd-odd transpositions
    for i in range(1, len(modes)):
        j = i
        while j > 0 and _mode_key(modes[j - 1]) > _mode_key(modes[j]):
            a, b = modes[j - 1], modes[j]
            if sys.species[a[0]].odd and sys.species[b[0]].odd:
                sign = -sign
            modes[j - 1], modes[j] = b, a
            j -= 1
    for i in range(1, len(modes)):
        if modes[i] == modes[i - 1] and sys.species[modes[i][0]].odd:
            return None
    return FockState(mu, tuple(modes), sign)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _species_mode_shapes(sys: System, idx: int, degree: int):
    """All canonical depth tuples of one species totalling the given degree."""
    sp = sys.species[idx]
    w = sp.engine_weight
    if sp.kind == BOSON_HALF and w == 0:
        raise NonEnumerable(
            f"species {sp.name} is a weight-0 boson: graded slices are infinite")
    fermionic = sp.odd
    out = []

    def rec(remaining, max_depth, acc):
        if remaining == 0:
            out.append(tuple(acc))
        for d in range(max_depth, 0, -1):
            dd = d - 1 + w
            if dd > remaining:
                continue
            if dd == 0:
                # zero-degree modes (weight-0 fermion at depth 1) trail the shape
                if remaining == 0:
                    acc.append(d)
                    out.append(tuple(acc))
                    acc.pop()
                continue
            acc.append(d)
            rec(remaining - dd, d - 1 if fermionic else d, acc)
            acc.pop()

    rec(degree, max(0, degree + 1 - w), [])
    return out


def _mode_sets(sys: System, degree: int):
    key = degree
    if key in sys._basis_cache:
        return sys._basis_cache[key]
    per_species = []
    for idx in range(len(sys.species)):
        shapes = {}
        for d in range(degree + 1):
            shapes[d] = _species_mode_shapes(sys, idx, d)
        per_species.append(shapes)
    out = []

    def rec(idx, remaining, acc):
        if idx == len(sys.species):
            if remaining == 0:
                out.append(tuple(acc))
            return
        for d in range(remaining, -1, -1):
            for shape in per_species[idx][d]:
                acc.extend((idx, dep) for dep in shape)
                rec(idx + 1, remaining - d, acc)
                for _ in shape:
                    acc.pop()

    rec(0, degree, [])
    out.sort()
    sys._basis_cache[key] = tuple(out)
    return sys._basis_cache[key]


def enumerate_basis(sys: System, mu: Momentum, degree: int, cap: Optional[int] = None):
    """Ordered basis of the degree slice of the Fock module over |mu>."""
    if degree < 0:
        return []
    shapes = _mode_sets(sys, degree)
    if cap is not None and len(shapes) > cap:
        raise ResourceBound(
            f"slice size {len(shapes)} exceeds cap {cap} (degree {degree})")
    return [FockState(mu, modes, 1) for modes in shapes]


def graded_dimension(sys: System, mu: Momentum, degrees, cap: Optional[int] = None):
    return [len(enumerate_basis(sys, mu, d, cap)) for d in degrees]


def state_str(sys: System, state: FockState) -> str:
    parts = "".join(f"{sys.species[s].name}(-{d})" for s, d in state.modes)
    mu = ",".join(str(v) for v in state.momentum.values)
    sgn = "-" if state.sign < 0 else ""
    return f"{sgn}{parts}|mu=({mu})>"
