"""Graded free right modules, matrix maps, complexes and minimal resolutions.

Conventions: an element of ``F = (+)_k B(-j_k)`` is a column of coordinates
with coefficients from B multiplying on the right.  A map is a matrix acting
on the left of coordinates; basis vector ``e_k`` goes to ``sum_i e_i f[i][k]``
and ``e_k m`` goes to ``sum_i e_i (f[i][k] m)``.  Composition multiplies
entries in the order f-entry times g-entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import ScalarMatrix, Subspace, complement_in, kernel_basis, rank
from .rewriting import NcPolynomial, RewriteSystem, UncertifiedSystemError, parse_polynomial


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class FreeModule:
    """``(+)_k B(-shifts[k])``."""

    shifts: tuple

    def __init__(self, shifts):
        object.__setattr__(self, "shifts", tuple(int(s) for s in shifts))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def basis(self, rs: RewriteSystem, degree: int) -> list:
        """Coordinates ``(k, normal word)`` of the degree-``degree`` component."""
        out = []
        for k, j in enumerate(self.shifts):
            if degree >= j:
                out.extend((k, w) for w in rs.normal_monomials(degree - j))
        return out

    def dim(self, rs: RewriteSystem, degree: int) -> int:
        return sum(rs.dim(degree - j) for j in self.shifts)

    def hilbert(self, rs: RewriteSystem, max_degree: int) -> list:
        return [self.dim(rs, d) for d in range(max_degree + 1)]

    def describe(self) -> str:
        if not self.shifts:
            return "0"
        counts = {}
        for j in self.shifts:
            counts[j] = counts.get(j, 0) + 1
        parts = []
        for j in sorted(counts):
            b = "B" if j == 0 else f"B({-j})"
            parts.append(b if counts[j] == 1 else f"{b}^{counts[j]}")
        return " + ".join(parts)


class ModuleMap:
    """A homogeneous matrix map between graded free right modules."""

    def __init__(self, source: FreeModule, target: FreeModule, entries: Sequence[Sequence[NcPolynomial]]):
        self.source = source
        self.target = target
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != target.rank or any(len(row) != source.rank for row in entries):
            raise ResolutionError(
                f"matrix shape does not match {target.rank}x{source.rank}")
        for i, row in enumerate(entries):
            for k, e in enumerate(row):
                if e and e.degrees() != {source.shifts[k] - target.shifts[i]}:
                    raise ResolutionError(
                        f"entry ({i}, {k}) is not homogeneous of degree "
                        f"{source.shifts[k] - target.shifts[i]}")
        self.entries = entries

    @classmethod
    def identity(cls, module: FreeModule, one=1) -> "ModuleMap":
        n = module.rank
        rows = [[NcPolynomial.constant(one) if i == k else NcPolynomial.zero() for k in range(n)]
                for i in range(n)]
        return cls(module, module, rows)

    def entry(self, i: int, k: int) -> NcPolynomial:
        return self.entries[i][k]

    def with_entry(self, i: int, k: int, value: NcPolynomial) -> "ModuleMap":
        rows = [list(r) for r in self.entries]
        rows[i][k] = value
        return ModuleMap(self.source, self.target, rows)

    def column(self, k: int) -> list:
        return [row[k] for row in self.entries]

    def is_zero(self) -> bool:
        return not any(e for row in self.entries for e in row)

    def is_minimal(self) -> bool:
        return all(not e.constant_term() for row in self.entries for e in row)

    def degree_matrix(self, rs: RewriteSystem, degree: int) -> ScalarMatrix:
        """The k-linear map in one internal degree, on normal-word coordinates."""
        src = self.source.basis(rs, degree)
        tgt_index = {}
        for i, j in enumerate(self.target.shifts):
            if degree >= j:
                for n, w in enumerate(rs.normal_monomials(degree - j)):
                    tgt_index[(i, w)] = len(tgt_index)
        columns = []
        nf = rs.normal_form_word
        for k, m in src:
            col = {}
            for i, row in enumerate(self.entries):
                e = row[k]
                if not e:
                    continue
                for u, c in e.terms.items():
                    for w, d in nf(u + m).terms.items():
                        r = tgt_index[(i, w)]
                        v = col.get(r, 0) + c * d
                        if v:
                            col[r] = v
                        else:
                            del col[r]
            columns.append(col)
        return ScalarMatrix.from_columns(len(tgt_index), columns)

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return (self.source, self.target, self.entries) == (other.source, other.target, other.entries)

    def __repr__(self):
        return f"ModuleMap({self.source.describe()} -> {self.target.describe()})"


def compose(rs: RewriteSystem | None, f: ModuleMap, g: ModuleMap) -> ModuleMap:
    """``f o g``; with ``rs=None`` the product is taken in the free algebra."""
    if f.source != g.target:
        raise ResolutionError("shape mismatch: f.source != g.target")
    rows = []
    for i in range(f.target.rank):
        row = []
        for k in range(g.source.rank):
            acc = NcPolynomial.zero()
            for m in range(f.source.rank):
                a, b = f.entries[i][m], g.entries[m][k]
                if a and b:
                    acc = acc + a * b
            row.append(rs.normal_form(acc) if rs is not None else acc)
        rows.append(row)
    return ModuleMap(g.source, f.target, rows)


class Complex:
    """``F_n --d_n--> ... --d_1--> F_0``; ``maps[i - 1]`` is ``d_i``."""

    def __init__(self, maps: Sequence[ModuleMap], modules: Sequence[FreeModule] | None = None):
        self.maps = tuple(maps)
        if modules is None:
            if not self.maps:
                raise ResolutionError("an empty complex needs its module list")
            modules = [self.maps[0].target] + [d.source for d in self.maps]
        self.modules = tuple(modules)
        if len(self.modules) != len(self.maps) + 1:
            raise ResolutionError("a complex with n maps has n + 1 modules")
        for i, d in enumerate(self.maps, start=1):
            if d.target != self.modules[i - 1] or d.source != self.modules[i]:
                raise ResolutionError(f"d_{i} is not composable with its neighbours")

    @property
    def length(self) -> int:
        return len(self.maps)

    def d(self, i: int) -> ModuleMap:
        return self.maps[i - 1]

    def truncate(self, n: int) -> "Complex":
        """Keep ``d_1 .. d_n``."""
        return Complex(self.maps[:n], self.modules[:n + 1])

    def replace(self, i: int, d: ModuleMap) -> "Complex":
        maps = list(self.maps)
        maps[i - 1] = d
        return Complex(maps)

    def betti_table(self) -> "BettiTable":
        entries = {}
        for i, F in enumerate(self.modules):
            for j in F.shifts:
                entries[(i, j)] = entries.get((i, j), 0) + 1
        return BettiTable(entries)

    def ranks(self) -> list:
        return [F.rank for F in self.modules]


# ---------------------------------------------------------------------------
# Betti tables and Poincare series

@dataclass(frozen=True)
class BettiTable:
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), b in self.entries.items():
            if b < 0:
                raise ResolutionError("Betti numbers are nonnegative")
            if b:
                clean[(int(i), int(j))] = int(b)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, key) -> int:
        return self.entries.get(tuple(key), 0)

    def totals(self) -> list:
        if not self.entries:
            return []
        n = max(i for i, _ in self.entries)
        return [sum(b for (i, _), b in self.entries.items() if i == k) for k in range(n + 1)]

    def is_linear(self) -> bool:
        return all(i == j for i, j in self.entries)

    def rows(self) -> list:
        return [(i, j, b) for (i, j), b in self.entries.items()]

    def __hash__(self):
        return hash(tuple(self.entries.items()))


@dataclass(frozen=True)
class PoincareSeries:
    coefficients: dict   # (i, j) -> beta_ij, the coefficient of s^i t^j
    univariate: tuple    # total Betti numbers, coefficients of z^i

    def render(self) -> str:
        return _render_bivariate(self.coefficients)

    def render_univariate(self) -> str:
        return _render_bivariate({(i, 0): b for i, b in enumerate(self.univariate) if b}, ("z", "t"))


def _render_bivariate(coeffs: dict, vars=("s", "t")) -> str:
    if not coeffs:
        return "0"
    out = []
    for (i, j), c in sorted(coeffs.items()):
        mon = []
        for v, e in zip(vars, (i, j)):
            if e:
                mon.append(v if e == 1 else f"{v}^{e}")
        body = "*".join(mon)
        if not body:
            term = str(c)
        elif c == 1:
            term = body
        else:
            term = f"{c}*{body}"
        out.append(term)
    return " + ".join(out)


def poincare_series(bt: BettiTable) -> PoincareSeries:
    return PoincareSeries(dict(bt.entries), tuple(bt.totals()))


# ---------------------------------------------------------------------------
# verification

@dataclass
class CompositeFailure:
    position: int     # composite d_position o d_(position + 1)
    row: int
    col: int
    residue: NcPolynomial


@dataclass
class ComplexReport:
    is_complex: bool
    is_minimal: bool
    failures: list
    non_minimal: list  # (map index, row, col)

    @property
    def ok(self) -> bool:
        return self.is_complex and self.is_minimal


def verify_complex(rs: RewriteSystem, c: Complex) -> ComplexReport:
    failures = []
    for i in range(1, c.length):
        comp = compose(rs, c.d(i), c.d(i + 1))
        for r, row in enumerate(comp.entries):
            for k, e in enumerate(row):
                if e:
                    failures.append(CompositeFailure(i, r, k, e))
    non_minimal = [(i, r, k) for i, d in enumerate(c.maps, start=1)
                   for r, row in enumerate(d.entries) for k, e in enumerate(row) if e.constant_term()]
    return ComplexReport(not failures, not non_minimal, failures, non_minimal)


@dataclass
class DegreeData:
    degree: int
    dims: list        # dim (F_i)_d
    ranks: list       # ranks[i - 1] = rank (d_i)_d
    homology: list    # homology[i] for i = 1..n (index 0 unused, None)
    cokernel: int     # dim of coker d_1 in this degree


@dataclass
class ExactnessReport:
    exact: bool
    degrees: list
    failures: list    # (degree, position, dimension)

    def homology(self, degree: int, position: int) -> int:
        return self.degrees[degree].homology[position]


def degree_ranks(rs: RewriteSystem, c: Complex, degree: int) -> DegreeData:
    dims = [F.dim(rs, degree) for F in c.modules]
    ranks = [rank(d.degree_matrix(rs, degree)) for d in c.maps]
    n = c.length
    hom = [None]
    for i in range(1, n + 1):
        nxt = ranks[i] if i < n else 0
        hom.append(dims[i] - ranks[i - 1] - nxt)
    coker = dims[0] - (ranks[0] if n else 0)
    return DegreeData(degree, dims, ranks, hom, coker)


def degreewise_exactness(rs: RewriteSystem, c: Complex, max_degree: int,
                         module_hilbert: Sequence[int] | None = None) -> ExactnessReport:
    """Check ``ker d_i = im d_(i+1)`` in every internal degree up to ``max_degree``.

    ``module_hilbert`` is the expected Hilbert function of the resolved module;
    when given, ``coker d_1`` must match it (position 0).
    """
    rs.require_certified()
    degrees, failures = [], []
    for d in range(max_degree + 1):
        data = degree_ranks(rs, c, d)
        degrees.append(data)
        for i in range(1, c.length + 1):
            if data.homology[i]:
                failures.append((d, i, data.homology[i]))
        if module_hilbert is not None and data.cokernel != module_hilbert[d]:
            failures.append((d, 0, data.cokernel - module_hilbert[d]))
    return ExactnessReport(not failures, degrees, failures)


# ---------------------------------------------------------------------------
# minimal resolutions

def _right_multiply(rs: RewriteSystem, F: FreeModule, vec: dict, coords: list, gen: int,
                    target_index: dict) -> dict:
    out = {}
    nf = rs.normal_form_word
    for idx, c in vec.items():
        k, m = coords[idx]
        for w, d in nf(m + (gen,)).terms.items():
            r = target_index[(k, w)]
            v = out.get(r, 0) + c * d
            if v:
                out[r] = v
            else:
                del out[r]
    return out


def _independent(polys: list) -> list:
    """Drop polynomials lying in the span of earlier ones."""
    seen = Subspace.zero(0)
    words, kept = {}, []
    for p in polys:
        for w in p.words():
            words.setdefault(w, len(words))
        vecs = [{words[w]: c for w, c in q.terms.items()} for q in kept + [p]]
        span = Subspace.span(vecs, len(words))
        if span.dim > seen.dim:
            kept.append(p)
            seen = span
    return kept


def minimal_resolution(rs: RewriteSystem, ideal_generators: Sequence[NcPolynomial],
                       max_homological: int = 6, max_degree: int = 8):
    """Minimal graded free resolution of ``B/(generators)B``, truncated at the bounds.

    Returns ``(Complex, BettiTable)``.  At each stage the kernel of the last
    differential is computed degree by degree; the part generated by lower
    degrees is ``K_(d-1) * B_1`` and a canonical complement of it in ``K_d``
    supplies the new minimal generators.
    """
    rs.require_certified()
    gens = [rs.normal_form(g) for g in ideal_generators]
    for g in gens:
        if g and g.degrees() != {1}:
            raise ResolutionError("ideal generators must be homogeneous of degree 1")
    gens = _independent(gens)
    F0 = FreeModule([0])
    if not gens:
        C = Complex([], [F0])
        return C, C.betti_table()
    maps = [ModuleMap(FreeModule([1] * len(gens)), F0, [gens])]
    one = rs.field(1)

    while len(maps) < max_homological:
        d = maps[-1]
        F = d.source
        new_cols, new_shifts = [], []
        prev_kernel, prev_coords = None, None
        for deg in range(min(F.shifts), max_degree + 1):
            coords = F.basis(rs, deg)
            index = {c: n for n, c in enumerate(coords)}
            K = kernel_basis(d.degree_matrix(rs, deg))
            generated = []
            if prev_kernel is not None and prev_kernel.dim:
                for v in prev_kernel.basis:
                    for g in range(rs.n_generators):
                        generated.append(_right_multiply(rs, F, v, prev_coords, g, index))
            S = Subspace.span(generated, len(coords))
            for v in complement_in(S, K).basis:
                col = [NcPolynomial.zero() for _ in range(F.rank)]
                for idx, c in v.items():
                    k, m = coords[idx]
                    col[k] = col[k] + NcPolynomial.monomial(m, c)
                new_cols.append(col)
                new_shifts.append(deg)
            prev_kernel, prev_coords = K, coords
        if not new_cols:
            break
        entries = [[col[i] for col in new_cols] for i in range(F.rank)]
        maps.append(ModuleMap(FreeModule(new_shifts), F, entries))
    C = Complex(maps)
    return C, C.betti_table()


# ---------------------------------------------------------------------------
# the explicit complexes for family K

def _gens(rs: RewriteSystem, *names):
    return [rs.gen(n) for n in names]


def explicit_resolution_K(alpha, rs: RewriteSystem) -> Complex:
    """The linear resolution of the trivial module over family K."""
    f = rs.field
    a = f(alpha)
    if not a:
        raise ResolutionError("alpha must be nonzero")
    x1, x2, y1, y2 = _gens(rs, "x1", "x2", "y1", "y2")
    z = NcPolynomial.zero()
    F0, F1, F2, F3, F4 = (FreeModule([i] * n) for i, n in enumerate((1, 4, 6, 4, 1)))
    d1 = ModuleMap(F1, F0, [[x1, x2, y1, y2]])
    d2 = ModuleMap(F2, F1, [
        [x2, z, -y1, z, -y2, z],
        [x1, z, z, -y2, z, y1.scale(-a)],
        [z, y2, x1, x2, z, z],
        [z, y1, z, z, x1, x2],
    ])
    d3 = ModuleMap(F3, F2, [
        [y2, y1.scale(a), z, z],
        [z, z, x1, x2],
        [x2, z, -y2, z],
        [x1, z, z, y1.scale(-a)],
        [z, x2, -y1, z],
        [z, x1, z, -y2],
    ])
    d4 = ModuleMap(F4, F3, [[y1.scale(a)], [y2], [x2], [x1]])
    return Complex([d1, d2, d3, d4])


def cyclic_module_resolution_x(rs: RewriteSystem) -> Complex:
    x1, x2 = _gens(rs, "x1", "x2")
    d1 = ModuleMap(FreeModule([1, 1]), FreeModule([0]), [[x1, x2]])
    d2 = ModuleMap(FreeModule([2]), FreeModule([1, 1]), [[x2], [x1]])
    return Complex([d1, d2])


def cyclic_module_resolution_y(rs: RewriteSystem) -> Complex:
    y1, y2 = _gens(rs, "y1", "y2")
    d1 = ModuleMap(FreeModule([1, 1]), FreeModule([0]), [[y1, y2]])
    d2 = ModuleMap(FreeModule([2]), FreeModule([1, 1]), [[y2], [y1]])
    return Complex([d1, d2])


SYZYGIES = ("eta1", "eta2", "eta3", "eta4", "omega")


def syzygy_vector(rs: RewriteSystem, which: str, alpha) -> list:
    """Coefficient vector of a cubic syzygy over f1..f6, or of omega over g1..g4."""
    a = rs.field(alpha)
    x1, x2, y1, y2 = _gens(rs, "x1", "x2", "y1", "y2")
    z = NcPolynomial.zero()
    table = {
        "eta1": [y2, z, x2, x1, z, z],
        "eta2": [y1.scale(a), z, z, z, x2, x1],
        "eta3": [z, x1, -y2, z, -y1, z],
        "eta4": [z, x2, z, y1.scale(-a), z, -y2],
        "omega": [y1.scale(a), y2, x2, x1],
    }
    if which not in table:
        raise ResolutionError(f"unknown syzygy {which!r}; expected one of {SYZYGIES}")
    return table[which]


def syzygy_evaluate(rs: RewriteSystem, which: str, alpha, reduce: bool = True) -> list:
    """Apply d_2 to an eta (or d_3 to omega); normal-formed unless ``reduce`` is False."""
    C = explicit_resolution_K(alpha, rs)
    vec = syzygy_vector(rs, which, alpha)
    if which == "omega":
        d, shift = C.d(3), 4
    else:
        d, shift = C.d(2), 3
    col = ModuleMap(FreeModule([shift]), d.source, [[e] for e in vec])
    return compose(rs if reduce else None, d, col).column(0)


# ---------------------------------------------------------------------------
# serialisation

def complex_to_json(rs: RewriteSystem, c: Complex) -> dict:
    return {
        "schema": 1,
        "generators": list(rs.names),
        "shifts": [list(F.shifts) for F in c.modules],
        "maps": [[[rs.render(e) for e in row] for row in d.entries] for d in c.maps],
    }


def complex_from_json(doc, rs: RewriteSystem) -> Complex:
    if isinstance(doc, str):
        doc = json.loads(doc)
    if doc.get("schema") != 1:
        raise ResolutionError("unsupported complex schema")
    modules = [FreeModule(s) for s in doc["shifts"]]
    maps = []
    for i, rows in enumerate(doc["maps"], start=1):
        entries = [[parse_polynomial(e, rs.names, rs.field) for e in row] for row in rows]
        maps.append(ModuleMap(modules[i], modules[i - 1], entries))
    return Complex(maps, modules)


def module_hilbert_function(rs_quotient: RewriteSystem, max_degree: int) -> list:
    """Hilbert function of a quotient algebra given by its own certified system."""
    if not rs_quotient.certified():
        raise UncertifiedSystemError("quotient rewrite system is not confluent")
    return rs_quotient.hilbert_coefficients(max_degree)


def euler_characteristic(rs: RewriteSystem, bt: BettiTable, max_degree: int) -> list:
    """Coefficients of ``sum (-1)^i beta_ij t^j H_B(t)`` up to ``max_degree``."""
    out = []
    for d in range(max_degree + 1):
        out.append(sum((-1) ** i * b * rs.dim(d - j) for (i, j), b in bt.entries.items()))
    return out
