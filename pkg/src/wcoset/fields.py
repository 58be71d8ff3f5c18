"""Field expressions and their exact mode action on Fock states.

A FieldExpr is a tree over Gen (a registered species), Deriv, NormOrd (the
right-nested normally ordered product), Scale, Sum, and ExpOp (an exponential
lattice/shift operator).  Everything the package verifies reduces to
``mode_apply``: the physical (n)-mode of an expression applied to a state,
returning an exact finite linear combination.

Conventions.  Fields expand as a(z) = sum_n a_(n) z^(-n-1).  A mode a_(n) of a
homogeneous expression of engine weight w shifts engine degree by w - n - 1.
Normally ordered products obey the standard expansion

    (:AB:)_(n) = sum_{j>=0} A_(-1-j) B_(n+j)
               + (-1)^{p(A)p(B)} sum_{j>=0} B_(n-1-j) A_(j),

both sums truncated exactly by the grading.  The exponential operator with
coefficient c, direction lambda and shift s acts on a state of momentum mu as

    eps(s, mu) T_s z^{c(lambda|mu)}
        exp( sum_{m>0} (c/m) lambda_(-m) z^m ) exp( -sum_{m>0} (c/m) lambda_(m) z^-m ),

where (lambda|mu) is the zero-mode eigenvalue of the direction on |mu> and
eps is the lattice two-cocycle.  c(lambda|mu) must be an integer; otherwise
NonIntegralExponent is raised.

A LinComb is a dict FockState -> coefficient with canonical, sign-positive
keys and no stored zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import NonIntegralExponent, NonSymmetric, ParityMismatch
from .fock import FockState, Momentum, System, normal_form
from .scalars import RatFun, Scalar, sc_is_zero


# ---------------------------------------------------------------------------
# expression tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Deriv:
    expr: "FieldExpr"
    order: int = 1


@dataclass(frozen=True)
class NormOrd:
    left: "FieldExpr"
    right: "FieldExpr"


@dataclass(frozen=True)
class Scale:
    coeff: Scalar
    expr: "FieldExpr"


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class ExpOp:
    coeff: Scalar
    direction: tuple  # zero-mode coefficients over the heisenberg species
    shift: Momentum


FieldExpr = Union[Gen, Deriv, NormOrd, Scale, Sum, ExpOp]


def gen(name: str) -> Gen:
    return Gen(name)


def nord(*factors) -> FieldExpr:
    """Right-nested normally ordered product :A(:B(:C...:):):."""
    if len(factors) == 1:
        return factors[0]
    return NormOrd(factors[0], nord(*factors[1:]))


def scale(c, expr) -> FieldExpr:
    return Scale(c, expr)


def sadd(*terms) -> FieldExpr:
    flat = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    return flat[0] if len(flat) == 1 else Sum(tuple(flat))


def deriv(expr, order=1) -> FieldExpr:
    return Deriv(expr, order)


def heis_comb(sys: System, coeffs: dict) -> FieldExpr:
    """Linear combination of heisenberg generators from a name -> coeff map."""
    terms = []
    for name, c in coeffs.items():
        if sc_is_zero(c):
            continue
        terms.append(Gen(name) if c == 1 else Scale(c, Gen(name)))
    if not terms:
        raise ValueError("empty heisenberg combination")
    return sadd(*terms)


def direction_of(sys: System, coeffs: dict) -> tuple:
    """Zero-mode coefficient vector over the heisenberg species from a name map."""
    vec = [Fraction(0)] * len(sys.heis_indices)
    for name, c in coeffs.items():
        idx = sys.index[name]
        vec[sys.heis_pos[idx]] = c
    return tuple(vec)


# ---------------------------------------------------------------------------
# linear combinations
# ---------------------------------------------------------------------------

LinComb = dict


def lc_add(acc: LinComb, state: Optional[FockState], coeff: Scalar) -> None:
    if state is None or sc_is_zero(coeff):
        return
    if state.sign != 1:
        coeff = coeff * state.sign
        state = FockState(state.momentum, state.modes, 1)
    new = acc.get(state, 0) + coeff
    if sc_is_zero(new):
        acc.pop(state, None)
    else:
        acc[state] = new


def lc_scale(lc: LinComb, c: Scalar) -> LinComb:
    if sc_is_zero(c):
        return {}
    return {s: v * c for s, v in lc.items()}


def lc_sum(*lcs) -> LinComb:
    acc = {}
    for lc in lcs:
        for s, v in lc.items():
            lc_add(acc, s, v)
    return acc


def lc_eq(a: LinComb, b: LinComb) -> bool:
    if set(a) != set(b):
        return False
    return all(a[s] == b[s] for s in a)


def lc_degree(sys: System, lc: LinComb) -> Optional[int]:
    degs = {sys.state_degree(s) for s in lc}
    if len(degs) > 1:
        raise ValueError("linear combination is not homogeneous")
    return degs.pop() if degs else None


def lc_str(sys: System, lc: LinComb) -> str:
    from .fock import state_str
    if not lc:
        return "0"
    parts = []
    order = sorted(lc, key=lambda st: (tuple(str(v) for v in st.momentum.values), st.modes))
    for s in order:
        parts.append(f"({lc[s]})*{state_str(sys, s)}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# structural attributes
# ---------------------------------------------------------------------------

def parity(sys: System, expr: FieldExpr) -> int:
    if isinstance(expr, Gen):
        return 1 if sys.species[sys.index[expr.name]].odd else 0
    if isinstance(expr, Deriv):
        return parity(sys, expr.expr)
    if isinstance(expr, Scale):
        return parity(sys, expr.expr)
    if isinstance(expr, NormOrd):
        return (parity(sys, expr.left) + parity(sys, expr.right)) % 2
    if isinstance(expr, Sum):
        ps = {parity(sys, t) for t in expr.terms}
        if len(ps) != 1:
            raise ParityMismatch("sum mixes parities")
        return ps.pop()
    if isinstance(expr, ExpOp):
        return sys.momentum_parity(expr.shift)
    raise TypeError(expr)


def shift_of(sys: System, expr: FieldExpr) -> Momentum:
    zero = sys.zero_momentum()
    if isinstance(expr, (Gen,)):
        return zero
    if isinstance(expr, (Deriv, Scale)):
        return shift_of(sys, expr.expr)
    if isinstance(expr, NormOrd):
        return shift_of(sys, expr.left) + shift_of(sys, expr.right)
    if isinstance(expr, Sum):
        shifts = [shift_of(sys, t) for t in expr.terms]
        if any(s != shifts[0] for s in shifts):
            raise ValueError("sum mixes momentum shifts")
        return shifts[0]
    if isinstance(expr, ExpOp):
        return expr.shift
    raise TypeError(expr)


def _as_int(x: Scalar, what: str) -> int:
    if isinstance(x, RatFun):
        if not x.is_constant():
            raise NonIntegralExponent(f"{what} is not constant: {x}")
        x = x.as_rat()
    x = Fraction(x)
    if x.denominator != 1:
        raise NonIntegralExponent(f"{what} = {x} is not an integer")
    return int(x)


def exp_power(sys: System, op: ExpOp, mu: Momentum) -> int:
    """z-exponent c(lambda|mu) of an ExpOp on the Fock module over |mu>."""
    acc = 0
    for pos, c in enumerate(op.direction):
        if sc_is_zero(c):
            continue
        acc = acc + c * mu.values[pos]
    acc = acc * op.coeff if not sc_is_zero(acc) else acc * 0
    return _as_int(acc, "exponent pairing")


def weight(sys: System, expr: FieldExpr, mu: Momentum) -> int:
    """Engine weight of expr acting on the Fock module over |mu>."""
    if isinstance(expr, Gen):
        return sys.species[sys.index[expr.name]].engine_weight
    if isinstance(expr, Deriv):
        return weight(sys, expr.expr, mu) + expr.order
    if isinstance(expr, Scale):
        return weight(sys, expr.expr, mu)
    if isinstance(expr, NormOrd):
        wr = weight(sys, expr.right, mu)
        wl = weight(sys, expr.left, mu + shift_of(sys, expr.right))
        return wl + wr
    if isinstance(expr, Sum):
        return max(weight(sys, t, mu) for t in expr.terms)
    if isinstance(expr, ExpOp):
        return -exp_power(sys, expr, mu)
    raise TypeError(expr)


# ---------------------------------------------------------------------------
# elementary mode actions
# ---------------------------------------------------------------------------

def _heis_annihilate(sys: System, idx: int, n: int, state: FockState) -> LinComb:
    """h_(n), n >= 1, on a canonical state (even mover: no signs)."""
    acc = {}
    modes = state.modes
    for i, (s, d) in enumerate(modes):
        if d != n or not sys.species[s].is_heis:
            continue
        coeff = n * sys.pairing_of(idx, s) * state.sign
        rest = FockState(state.momentum, modes[:i] + modes[i + 1:], 1)
        lc_add(acc, rest, coeff)
    return acc


def _pair_annihilate(sys: System, idx: int, n: int, state: FockState) -> LinComb:
    """Pair-half a_(n), n >= 0: contracts partner modes at depth n+1."""
    acc = {}
    sp = sys.species[idx]
    partner = sys.index[sp.partner]
    sgn = state.sign
    odd_passed = 0
    for i, (s, d) in enumerate(state.modes):
        if s == partner and d == n + 1:
            coeff = sys.pair_sign(idx) * sgn
            if sp.odd and odd_passed % 2:
                coeff = -coeff
            rest = FockState(state.momentum, state.modes[:i] + state.modes[i + 1:], 1)
            lc_add(acc, rest, Fraction(coeff))
        if sys.species[s].odd:
            odd_passed += 1
    return acc


def _gen_mode(sys: System, idx: int, n: int, state: FockState) -> LinComb:
    sp = sys.species[idx]
    if n <= -1:
        out = normal_form(sys, state.momentum, ((idx, -n),) + state.modes, state.sign)
        acc = {}
        lc_add(acc, out, Fraction(1))
        return acc
    if sp.is_heis:
        if n == 0:
            acc = {}
            val = sys.momentum_value(state.momentum, idx)
            lc_add(acc, FockState(state.momentum, state.modes, 1), val * state.sign)
            return acc
        return _heis_annihilate(sys, idx, n, state)
    return _pair_annihilate(sys, idx, n, state)


# ---------------------------------------------------------------------------
# exponential operators
# ---------------------------------------------------------------------------

def _direction_annihilate(sys: System, direction, m: int, state: FockState) -> LinComb:
    acc = {}
    for pos, c in enumerate(direction):
        if sc_is_zero(c):
            continue
        idx = sys.heis_indices[pos]
        for s, v in _heis_annihilate(sys, idx, m, state).items():
            lc_add(acc, s, v * c)
    return acc


def _direction_create(sys: System, direction, m: int, state: FockState) -> LinComb:
    acc = {}
    for pos, c in enumerate(direction):
        if sc_is_zero(c):
            continue
        idx = sys.heis_indices[pos]
        out = normal_form(sys, state.momentum, ((idx, m),) + state.modes, state.sign)
        lc_add(acc, out, c)
    return acc


def _exp_plus_table(sys: System, op: ExpOp, state: FockState):
    """exp(-sum (c/m) lambda_(m) z^-m) |state> grouped by the z^-b it carries."""
    table = {0: {FockState(state.momentum, state.modes, 1): Fraction(state.sign)}}
    frontier = dict(table[0])
    dmax = sys.state_degree(state)
    k = 1
    while frontier:
        nxt = {}
        for st, coeff in frontier.items():
            b_st = dmax - sys.state_degree(st)
            for m in range(1, dmax - b_st + 1):
                step = _direction_annihilate(sys, op.direction, m, st)
                for s2, v2 in step.items():
                    lc_add(nxt, s2, v2 * coeff * (-op.coeff) / (m * k))
        for s2, v2 in nxt.items():
            b = dmax - sys.state_degree(s2)
            lc_add(table.setdefault(b, {}), s2, v2)
        frontier = nxt
        k += 1
    return table


def _exp_minus_apply(sys: System, op: ExpOp, lc: LinComb, a: int) -> LinComb:
    """Degree-a part of exp(sum (c/m) lambda_(-m) z^m) applied to lc."""
    if a == 0:
        return dict(lc)
    levels = {0: dict(lc)}
    frontier = {st: (v, 0) for st, v in lc.items()}
    k = 1
    while frontier:
        nxt = {}
        for st, (coeff, lvl) in frontier.items():
            for m in range(1, a - lvl + 1):
                step = _direction_create(sys, op.direction, m, st)
                for s2, v2 in step.items():
                    key = s2
                    cur = nxt.get(key)
                    add = v2 * coeff * op.coeff / (m * k)
                    if cur is None:
                        nxt[key] = (add, lvl + m)
                    else:
                        nxt[key] = (cur[0] + add, lvl + m)
        cleaned = {}
        for s2, (v2, lvl) in nxt.items():
            if sc_is_zero(v2) or lvl > a:
                continue
            lc_add(levels.setdefault(lvl, {}), s2, v2)
            cleaned[s2] = (v2, lvl)
        frontier = cleaned
        k += 1
    return levels.get(a, {})


def _expop_mode(sys: System, op: ExpOp, n: int, state: FockState) -> LinComb:
    mu = state.momentum
    p = exp_power(sys, op, mu)
    eps = sys.cocycle(op.shift.lattice, mu.lattice)
    plus = _exp_plus_table(sys, op, state)
    target_mu = mu + op.shift
    acc = {}
    for b, terms in plus.items():
        a = b - n - 1 - p
        if a < 0:
            continue
        shifted = {}
        for st, v in terms.items():
            lc_add(shifted, FockState(target_mu, st.modes, st.sign), v)
        for s2, v2 in _exp_minus_apply(sys, op, shifted, a).items():
            lc_add(acc, s2, v2 * eps)
    return acc


# ---------------------------------------------------------------------------
# mode_apply and friends
# ---------------------------------------------------------------------------

def _falling(n: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= (n - i)
    return out


def mode_apply(sys: System, expr: FieldExpr, n: int, arg) -> LinComb:
    """expr_(n) applied to a FockState or LinComb; exact, grading-faithful."""
    if isinstance(arg, dict):
        acc = {}
        for st, coeff in arg.items():
            for s2, v2 in mode_apply(sys, expr, n, st).items():
                lc_add(acc, s2, v2 * coeff)
        return acc
    state: FockState = arg

    if isinstance(expr, Gen):
        return _gen_mode(sys, sys.index[expr.name], n, state)
    if isinstance(expr, Scale):
        return lc_scale(mode_apply(sys, expr.expr, n, state), expr.coeff)
    if isinstance(expr, Sum):
        return lc_sum(*(mode_apply(sys, t, n, state) for t in expr.terms))
    if isinstance(expr, Deriv):
        ff = _falling(n, expr.order)
        if ff == 0:
            return {}
        c = Fraction((-1) ** expr.order * ff)
        return lc_scale(mode_apply(sys, expr.expr, n - expr.order, state), c)
    if isinstance(expr, ExpOp):
        return _expop_mode(sys, expr, n, state)
    if isinstance(expr, NormOrd):
        A, B = expr.left, expr.right
        mu = state.momentum
        d = sys.state_degree(state)
        sgn = (-1) ** (parity(sys, A) * parity(sys, B))
        acc = {}
        # sum_j A_(-1-j) B_(n+j)
        jmax = d + weight(sys, B, mu) - 1 - n
        for j in range(0, jmax + 1):
            t = mode_apply(sys, B, n + j, state)
            if not t:
                continue
            for s2, v2 in mode_apply(sys, A, -1 - j, t).items():
                lc_add(acc, s2, v2)
        # (+-) sum_j B_(n-1-j) A_(j)
        jmax = d + weight(sys, A, mu) - 1
        for j in range(0, jmax + 1):
            t = mode_apply(sys, A, j, state)
            if not t:
                continue
            for s2, v2 in mode_apply(sys, B, n - 1 - j, t).items():
                lc_add(acc, s2, v2 * sgn)
        return acc
    raise TypeError(expr)


def state_of_field(sys: System, expr: FieldExpr, mu: Optional[Momentum] = None) -> LinComb:
    """Vacuum-module state of expr: its (-1)-mode on |mu> (z -> 0 limit)."""
    if mu is None:
        mu = sys.zero_momentum()
    return mode_apply(sys, expr, -1, sys.vacuum(mu))


def ope_singular(sys: System, a: FieldExpr, b: FieldExpr, max_pole: Optional[int] = None):
    """Singular part of a(z)b(w): pole order -> LinComb of states of b's module."""
    v = state_of_field(sys, b)
    if not v:
        return {}
    mu = next(iter(v)).momentum
    d = lc_degree(sys, v)
    jmax = d + weight(sys, a, mu) - 1
    if max_pole is not None:
        jmax = min(jmax, max_pole - 1)
    out = {}
    for j in range(0, jmax + 1):
        r = mode_apply(sys, a, j, v)
        if r:
            out[j + 1] = r
    return out


def l0_apply(sys: System, conformal: FieldExpr, state) -> LinComb:
    """L0 action: the (1)-mode of the conformal field."""
    return mode_apply(sys, conformal, 1, state)


def vacuum_coefficient(sys: System, lc: LinComb, mu: Optional[Momentum] = None) -> Scalar:
    if mu is None:
        mu = sys.zero_momentum()
    vac = sys.vacuum(mu)
    extra = [s for s in lc if s.modes]
    if extra:
        raise ValueError("second-order pole is not a multiple of the vacuum")
    return lc.get(vac, Fraction(0))


def current_gram(sys: System, currents) -> list:
    """Matrix of second-order-pole coefficients of weight-1 even currents."""
    zero = sys.zero_momentum()
    for c in currents:
        if parity(sys, c) != 0 or weight(sys, c, zero) != 1:
            raise ValueError("gram entries require weight-1 even currents")
    n = len(currents)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            poles = ope_singular(sys, currents[i], currents[j], max_pole=2)
            G[i][j] = vacuum_coefficient(sys, poles.get(2, {}))
    for i in range(n):
        for j in range(i):
            if G[i][j] != G[j][i]:
                raise NonSymmetric(f"gram entry ({i},{j}) != ({j},{i})")
    return G


# ---------------------------------------------------------------------------
# display
# ---------------------------------------------------------------------------

def expr_str(sys: System, expr: FieldExpr) -> str:
    if isinstance(expr, Gen):
        return expr.name
    if isinstance(expr, Deriv):
        d = "d" * expr.order
        return f"{d}({expr_str(sys, expr.expr)})"
    if isinstance(expr, Scale):
        return f"({expr.coeff})*{expr_str(sys, expr.expr)}"
    if isinstance(expr, Sum):
        return " + ".join(expr_str(sys, t) for t in expr.terms)
    if isinstance(expr, NormOrd):
        return f":{expr_str(sys, expr.left)} {expr_str(sys, expr.right)}:"
    if isinstance(expr, ExpOp):
        names = [sys.species[sys.heis_indices[pos]].name
                 for pos in range(len(expr.direction))]
        lam = " + ".join(f"({c})*{nm}" for nm, c in zip(names, expr.direction)
                         if not sc_is_zero(c))
        return f"exp(({expr.coeff})*int({lam}))"
    raise TypeError(expr)
