"""Screening residues as exact graded linear maps, their kernels and compositions.

A ScreeningOp is the residue of :P(z) e^{c int lambda(z)}: T_s between Fock
modules: prefactor P (None meaning 1), exponent coefficient c, direction
lambda, shift s, and a source momentum.  The residue is the (0)-mode of the
composite field; on the degree-d slice of the source it lands in degree
d + w_P - 1 - c(lambda|mu) of the target module over |mu + s>.

GradedMap holds one exact matrix per degree (rows indexed by the target
basis, columns by the source basis).  Kernels are computed by exact rank
(fraction-free over Q, field elimination over rational functions); kernel
bases, when requested, come back in reduced echelon form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import MomentumMismatch, ShapeMismatch
from .fields import (ExpOp, FieldExpr, LinComb, NormOrd, lc_degree, mode_apply,
                     exp_power, weight)
from .fock import Momentum, System, enumerate_basis
from .linalg import kernel_basis, mat_is_zero, mat_mul, rank, stack
from .scalars import sc_is_zero


@dataclass(frozen=True)
class ScreeningOp:
    """Residue of :P(z) e^{c int lambda(z)}: between graded Fock slices."""
    system: System
    coeff: object
    direction: tuple
    shift: Momentum
    source: Momentum
    prefactor: Optional[FieldExpr] = None
    name: str = "S"

    def field(self) -> FieldExpr:
        exp = ExpOp(self.coeff, self.direction, self.shift)
        if self.prefactor is None:
            return exp
        return NormOrd(self.prefactor, exp)

    def target(self) -> Momentum:
        return self.source + self.shift

    def degree_shift(self) -> int:
        sys = self.system
        zero = sys.zero_momentum()
        w_pref = weight(sys, self.prefactor, zero) if self.prefactor is not None else 0
        p = exp_power(sys, ExpOp(self.coeff, self.direction, self.shift), self.source)
        return w_pref - 1 - p

    def apply(self, v: LinComb) -> LinComb:
        return mode_apply(self.system, self.field(), 0, v)


@dataclass
class GradedMap:
    source: Momentum
    target: Momentum
    degree_shift: int
    blocks: dict = field(default_factory=dict)       # degree -> matrix
    source_dims: dict = field(default_factory=dict)  # degree -> int

    def to_triplets(self):
        """Sparse (degree, row, col, value) triplets for CSV export."""
        out = []
        for d in sorted(self.blocks):
            M = self.blocks[d]
            for i, row in enumerate(M):
                for j, x in enumerate(row):
                    if not sc_is_zero(x):
                        out.append((d, i, j, str(x)))
        return out

    def triplets_csv(self) -> str:
        lines = ["degree,row,col,value"]
        for d, i, j, v in self.to_triplets():
            lines.append(f"{d},{i},{j},{v}")
        return "\n".join(lines) + "\n"


@dataclass
class KernelReport:
    degrees: list
    dims: list
    bases: Optional[dict] = None

    def as_pairs(self):
        return list(zip(self.degrees, self.dims))


def residue_map(sys: System, op: ScreeningOp, degrees, cap: Optional[int] = None) -> GradedMap:
    """Exact matrices of the screening residue on the requested degree slices."""
    shift_deg = op.degree_shift()
    gm = GradedMap(op.source, op.target(), shift_deg)
    fld = op.field()
    for d in degrees:
        src = enumerate_basis(sys, op.source, d, cap)
        tgt = enumerate_basis(sys, op.target(), d + shift_deg, cap)
        index = {s.key(): i for i, s in enumerate(tgt)}
        M = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
        for j, s in enumerate(src):
            image = mode_apply(sys, fld, 0, s)
            for t, v in image.items():
                i = index.get(t.key())
                if i is None:
                    raise ShapeMismatch(
                        f"image state of degree {sys.state_degree(t)} missing from "
                        f"target slice {d + shift_deg}")
                M[i][j] = v
        gm.blocks[d] = M
        gm.source_dims[d] = len(src)
    return gm


def joint_kernel(maps, degrees, sys: Optional[System] = None,
                 source: Optional[Momentum] = None, cap: Optional[int] = None,
                 with_bases: bool = False) -> KernelReport:
    """Per-degree dimension of the intersection of kernels (stacked-matrix rank)."""
    degrees = list(degrees)
    if not maps:
        if sys is None or source is None:
            raise ShapeMismatch("empty map list needs an explicit system and source")
        dims = [len(enumerate_basis(sys, source, d, cap)) for d in degrees]
        return KernelReport(degrees, dims)
    src = maps[0].source
    if any(m.source != src for m in maps):
        raise ShapeMismatch("joint kernel requires a common source module")
    dims = []
    bases = {} if with_bases else None
    for d in degrees:
        blocks = []
        n = None
        for m in maps:
            if d not in m.blocks:
                raise ShapeMismatch(f"map lacks degree {d}")
            if n is None:
                n = m.source_dims[d]
            elif n != m.source_dims[d]:
                raise ShapeMismatch("maps disagree on source dimension")
            blocks.append(m.blocks[d])
        stacked = stack(blocks)
        if not stacked or not stacked[0]:
            dims.append(n or 0)
            if with_bases:
                bases[d] = kernel_basis([], n or 0)
            continue
        if with_bases:
            kb = kernel_basis(stacked, n)
            bases[d] = kb
            dims.append(len(kb))
        else:
            dims.append(n - rank(stacked))
    return KernelReport(degrees, dims, bases)


def compose_check(sys: System, s2: ScreeningOp, s1: ScreeningOp, degrees) -> dict:
    """True per degree iff the composed residues vanish on the whole slice."""
    if s2.source != s1.target():
        raise MomentumMismatch("target momentum of the first map must equal the "
                               "source of the second")
    degrees = list(degrees)
    m1 = residue_map(sys, s1, degrees)
    shifted = [d + s1.degree_shift() for d in degrees]
    m2 = residue_map(sys, s2, shifted)
    out = {}
    for d in degrees:
        A = m2.blocks[d + s1.degree_shift()]
        B = m1.blocks[d]
        M = mat_mul(A, B) if A and B and B[0] else []
        out[d] = mat_is_zero(M)
    return out


def annihilates(sys: System, screenings, v: LinComb) -> bool:
    """True iff every screening residue kills the homogeneous vector v."""
    if v:
        lc_degree(sys, v)  # homogeneity check
        momenta = {s.momentum for s in v}
        if len(momenta) > 1:
            raise MomentumMismatch("vector mixes momenta")
    for op in screenings:
        if op.apply(v):
            return False
    return True
