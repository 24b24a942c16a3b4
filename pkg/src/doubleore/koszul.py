"""Koszul spaces W_n of a quadratic algebra and the right Koszul complex.

Coordinates on ``V^{(x)n}`` are words of length n read as base-``v`` numbers,
which is the deglex order on words of that length.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Subspace, intersect_with_equations
from .resolution import Complex, FreeModule, ModuleMap, degreewise_exactness
from .rewriting import NcPolynomial, RewriteSystem

DEFAULT_BUDGET = 65536


class KoszulError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticData:
    v_dim: int
    relation_space: Subspace
    names: tuple = ()

    def __post_init__(self):
        if self.relation_space.ambient != self.v_dim ** 2:
            raise KoszulError("relation space must live in V (x) V")


def relation_space(pres) -> QuadraticData:
    v = len(pres.names)
    vecs = []
    for r in pres.relations:
        if r.degrees() != {2}:
            raise KoszulError("Koszul data needs purely quadratic relations")
        vecs.append({a * v + b: pres.field(c) for (a, b), c in r.terms.items()})
    return QuadraticData(v, Subspace.span(vecs, v * v), tuple(pres.names))


class KoszulSpaces:
    """Lazily computed W_0, W_1, ... using W_n = (W_(n-1) (x) V) cap (V^(n-2) (x) R)."""

    def __init__(self, qd: QuadraticData, budget: int = DEFAULT_BUDGET):
        self.qd = qd
        self.budget = budget
        v = qd.v_dim
        self._spaces = [Subspace.full(1), Subspace.full(v), qd.relation_space]
        self._r_perp = qd.relation_space.annihilator()

    def __getitem__(self, n: int) -> Subspace:
        if n < 0:
            raise KoszulError("n must be nonnegative")
        v = self.qd.v_dim
        if v ** n > self.budget:
            raise KoszulError(f"V^(x){n} has dimension {v ** n}, above the budget {self.budget}")
        while len(self._spaces) <= n:
            self._spaces.append(self._next())
        return self._spaces[n]

    def _next(self) -> Subspace:
        n = len(self._spaces)
        v = self.qd.v_dim
        prev = self._spaces[-1]
        ambient = v ** n
        if prev.dim == 0:
            return Subspace.zero(ambient)
        lifted = Subspace.span([{c * v + g: x for c, x in b.items()} for b in prev.basis for g in range(v)],
                               ambient)
        # V^(n-2) (x) R is cut out by R-perp on the last two tensor factors
        prefixes = sorted({c // (v * v) for b in lifted.basis for c in b})
        equations = [{u * v * v + c: x for c, x in phi.items()} for u in prefixes for phi in self._r_perp]
        return intersect_with_equations(lifted, equations)


def koszul_space(qd: QuadraticData, n: int, budget: int = DEFAULT_BUDGET) -> Subspace:
    return KoszulSpaces(qd, budget)[n]


def _placed(qd: QuadraticData, sub: Subspace, left: int, right: int) -> list:
    """Basis-spanning vectors of V^left (x) sub (x) V^right."""
    v = qd.v_dim
    m = v ** right
    block = sub.ambient * m
    out = []
    for u in range(v ** left):
        for b in sub.basis:
            for w in range(m):
                out.append({u * block + c * m + w: x for c, x in b.items()})
    return out


def containment_holds(spaces: KoszulSpaces, n: int) -> bool:
    """W_n sits inside both (W_(n-1) (x) V) and (V (x) W_(n-1))."""
    if n < 2:
        return True
    qd = spaces.qd
    Wn, Wm = spaces[n], spaces[n - 1]
    left = Subspace.span(_placed(qd, Wm, 0, 1), Wn.ambient)
    right = Subspace.span(_placed(qd, Wm, 1, 0), Wn.ambient)
    return Wn.is_subspace_of(left) and Wn.is_subspace_of(right)


def koszul_complex(qd: QuadraticData, rs: RewriteSystem, max_n: int, budget: int = DEFAULT_BUDGET) -> Complex:
    """``W_n (x) B(-n) -> W_(n-1) (x) B(-(n-1))`` by splitting off the last tensor factor.

    A basis vector sum c (w' (x) g) of W_n maps to sum c w' g, with each slice
    w' expressed on the canonical basis of W_(n-1).  The complex stops early
    once a space vanishes.
    """
    spaces = KoszulSpaces(qd, budget)
    v = qd.v_dim
    one = rs.field(1)
    maps = []
    modules = [FreeModule([0])]
    for n in range(1, max_n + 1):
        Wn, Wm = spaces[n], spaces[n - 1]
        if Wn.dim == 0:
            break
        src, tgt = FreeModule([n] * Wn.dim), FreeModule([n - 1] * Wm.dim)
        entries = [[NcPolynomial.zero() for _ in range(Wn.dim)] for _ in range(Wm.dim)]
        for col, w in enumerate(Wn.basis):
            slices = {}
            for c, x in w.items():
                slices.setdefault(c % v, {})[c // v] = x
            for g, sl in slices.items():
                for k, lam in Wm.coordinates(sl).items():
                    entries[k][col] = entries[k][col] + NcPolynomial.gen(g, lam * one)
        maps.append(ModuleMap(src, tgt, entries))
        modules.append(src)
    return Complex(maps, modules)


@dataclass
class KoszulReport:
    dims: list                 # dim W_n for n = 0..
    euler: list                # sum_n (-1)^n dim W_n dim B_(d-n) for d = 0..max
    euler_ok: bool
    exact_ok: bool
    exactness: object

    @property
    def passed(self) -> bool:
        return self.euler_ok and self.exact_ok


def koszulness_check(qd: QuadraticData, rs: RewriteSystem, max_degree: int,
                     budget: int = DEFAULT_BUDGET) -> KoszulReport:
    """Numerical (Euler characteristic) and homological (exactness) certificates."""
    spaces = KoszulSpaces(qd, budget)
    dims = []
    for n in range(max_degree + 1):
        # W_n lies in W_(n-1) (x) V, so it vanishes once one space does
        dims.append(0 if dims and dims[-1] == 0 else spaces[n].dim)
    euler = [sum((-1) ** n * dims[n] * rs.dim(d - n) for n in range(d + 1)) for d in range(max_degree + 1)]
    euler_ok = all(e == 0 for e in euler[1:]) and euler[0] == 1
    cx = koszul_complex(qd, rs, max_degree, budget)
    trivial = [1] + [0] * max_degree
    ex = degreewise_exactness(rs, cx, max_degree, module_hilbert=trivial)
    return KoszulReport(dims, euler, euler_ok, ex.exact, ex)
