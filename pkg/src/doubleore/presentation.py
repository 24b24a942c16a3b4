"""Trimmed graded double extensions of a two-dimensional regular base.

The base is ``A = k<x1, x2>/(x2 x1 - q12 x1 x2 - q11 x1^2)`` and the extension
``B = A_P[y1, y2; sigma]`` adds

    y2 y1 = p12 y1 y2 + p11 y1^2
    yi xs = sum_{j,t} a[i][j][s][t] xt yj        (i, s in {1, 2})

with ``sigma_ij(xs) = sum_t a[i][j][s][t] xt``.  Arrays are 0-based throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .fields import QQ, FieldError, PrimeField
from .linalg import determinant
from .rewriting import DEFAULT_NAMES, NcPolynomial, render_polynomial

X1, X2, Y1, Y2 = range(4)


class PresentationError(ValueError):
    """Invalid algebra input; ``path`` names the offending field when known."""

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class BaseData:
    q12: object
    q11: object

    def __post_init__(self):
        if not self.q12:
            raise PresentationError("q12 must be nonzero", "base.q12")


@dataclass(frozen=True)
class DEData:
    base: BaseData
    p12: object
    p11: object
    sigma: tuple  # sigma[i][j][s][t]
    field: object = QQ
    trimmed: bool = True

    def __post_init__(self):
        if not self.trimmed:
            raise PresentationError("non-trimmed extensions out of scope")
        if not self.p12:
            raise PresentationError("p12 must be nonzero", "P.p12")
        try:
            ok = len(self.sigma) == 2 and all(
                len(self.sigma[i]) == 2 and all(
                    len(self.sigma[i][j]) == 2 and all(len(self.sigma[i][j][s]) == 2 for s in range(2))
                    for j in range(2))
                for i in range(2))
        except TypeError:
            ok = False
        if not ok:
            raise PresentationError("sigma must be a 2x2x2x2 array", "sigma")

    def a(self, i, j, s, t):
        return self.sigma[i][j][s][t]

    def sigma_image(self, i: int, j: int, s: int) -> NcPolynomial:
        """sigma_ij(x_s) as a linear polynomial in x1, x2."""
        return NcPolynomial({(t,): self.sigma[i][j][s][t] for t in range(2)})


@dataclass(frozen=True)
class Presentation:
    names: tuple
    relations: tuple
    field: object = QQ

    def __post_init__(self):
        for r in self.relations:
            if not r.is_homogeneous():
                raise PresentationError(f"relation {render_polynomial(r, self.names, False)} is not homogeneous")

    @property
    def n_generators(self) -> int:
        return len(self.names)

    def with_relations(self, extra) -> "Presentation":
        return Presentation(self.names, tuple(self.relations) + tuple(extra), self.field)

    def render(self) -> list:
        return [render_polynomial(r, self.names, normal=False) for r in self.relations]


def _freeze_sigma(sigma, field):
    return tuple(tuple(tuple(tuple(field(sigma[i][j][s][t]) for t in range(2)) for s in range(2))
                       for j in range(2)) for i in range(2))


def make_de_data(q12, q11, p12, p11, sigma, field=QQ) -> DEData:
    f = field
    return DEData(BaseData(f(q12), f(q11)), f(p12), f(p11), _freeze_sigma(sigma, f), f)


def build_base_algebra(base: BaseData, field=QQ) -> Presentation:
    one = field(1)
    rel = NcPolynomial({(X2, X1): one, (X1, X2): -field(base.q12), (X1, X1): -field(base.q11)})
    return Presentation(("x1", "x2"), (rel,), field)


def build_double_extension(de: DEData) -> Presentation:
    if not isinstance(de, DEData):
        raise PresentationError("expected DEData")
    f = de.field
    one = f(1)
    rels = [
        build_base_algebra(de.base, f).relations[0],
        NcPolynomial({(Y2, Y1): one, (Y1, Y2): -de.p12, (Y1, Y1): -de.p11}),
    ]
    ys = (Y1, Y2)
    for i, s in product(range(2), range(2)):
        terms = {(ys[i], s): one}
        for j, t in product(range(2), range(2)):
            c = de.sigma[i][j][s][t]
            if c:
                terms[(t, ys[j])] = terms.get((t, ys[j]), 0) - c
        rels.append(NcPolynomial(terms))
    return Presentation(DEFAULT_NAMES, tuple(rels), f)


def family_K(alpha, field=QQ) -> DEData:
    """Family K at q = -1 over the quantum plane k_{-1}[x1, x2]."""
    alpha = field(alpha)
    if not alpha:
        raise PresentationError("alpha must be nonzero", "alpha")
    sigma = [[[[0, 0], [0, 0]] for _ in range(2)] for _ in range(2)]
    sigma[0][0][0][0] = 1      # sigma11(x1) = x1
    sigma[0][1][1][1] = 1      # sigma12(x2) = x2
    sigma[1][0][1][1] = alpha  # sigma21(x2) = alpha x2
    sigma[1][1][0][0] = 1      # sigma22(x1) = x1
    return make_de_data(-1, 0, -1, 0, sigma, field)


def identity_de_data(q12=1, q11=0, p12=1, p11=0, field=QQ) -> DEData:
    sigma = [[[[int(i == j and s == t) for t in range(2)] for s in range(2)] for j in range(2)]
             for i in range(2)]
    return make_de_data(q12, q11, p12, p11, sigma, field)


def family_K_alpha(de: DEData):
    """The alpha for which ``de`` is family K, or None."""
    alpha = de.sigma[1][0][1][1]
    if not alpha:
        return None
    try:
        return alpha if family_K(alpha, de.field) == de else None
    except PresentationError:
        return None


def sigma_matrix(de: DEData):
    """4x4 matrix with rows (i, s) and columns (j, t), i-major and j-major.

    Row (i, s) lists the coefficients of yi xs on x1 y1, x2 y1, x1 y2, x2 y2.
    Returns ``(matrix, determinant)``.
    """
    m = [[de.sigma[i][j][s][t] for j in range(2) for t in range(2)]
         for i in range(2) for s in range(2)]
    return m, determinant(m)


@dataclass(frozen=True)
class OrderVerdict:
    eligible: bool
    witness: str | None = None


@dataclass(frozen=True)
class OreReport:
    order_y1_y2: OrderVerdict
    order_y2_y1: OrderVerdict
    notes: tuple = ()


def _linear_form(p: NcPolynomial) -> str:
    parts = []
    for (t,), c in sorted(p.terms.items()):
        coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
        parts.append(f"{coef}x{t + 1}")
    return " + ".join(parts).replace("+ -", "- ")


def _first_nonzero_image(de: DEData, i: int, j: int):
    for s in range(2):
        img = de.sigma_image(i, j, s)
        if img:
            return f"sigma{i + 1}{j + 1}(x{s + 1}) = {_linear_form(img)}"
    return None


def _linear_det(de: DEData, i: int):
    return determinant([[de.sigma[i][i][s][t] for t in range(2)] for s in range(2)])


def iterated_ore_check(de: DEData) -> OreReport:
    """Which iterated Ore presentations A[y1][y2], A[y2][y1] the data admits."""
    w12 = _first_nonzero_image(de, 0, 1)
    first = OrderVerdict(w12 is None, w12)
    w21 = _first_nonzero_image(de, 1, 0)
    if w21 is not None:
        second = OrderVerdict(False, w21)
    elif de.p11:
        second = OrderVerdict(False, f"p11 = {de.p11}")
    else:
        second = OrderVerdict(True, None)
    notes = []
    for i in range(2):
        d = _linear_det(de, i)
        state = "invertible" if d else "singular"
        notes.append(f"sigma{i + 1}{i + 1} is {state} on degree one (det {d})")
    return OreReport(first, second, tuple(notes))


# ---------------------------------------------------------------------------
# JSON input

def _parse_field(doc, path="field"):
    if doc is None or doc == "rational":
        return QQ
    if isinstance(doc, dict) and set(doc) == {"prime"}:
        p = doc["prime"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise PresentationError("prime must be an integer", f"{path}.prime")
        try:
            return PrimeField(p)
        except FieldError as e:
            raise PresentationError(str(e), f"{path}.prime") from None
    raise PresentationError("expected \"rational\" or {\"prime\": p}", path)


def _scalar(doc, field, path):
    try:
        return field.parse(doc)
    except FieldError as e:
        raise PresentationError(str(e), path) from None


def _require(doc, key, path):
    if not isinstance(doc, dict):
        raise PresentationError("expected an object", path)
    if key not in doc:
        raise PresentationError(f"missing field {key!r}", f"{path}.{key}" if path else key)
    return doc[key]


def parse_presentation(document) -> DEData:
    """Validate a JSON document (text or already-decoded) into DEData."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise PresentationError(f"invalid JSON: {e}") from None
    if not isinstance(document, dict):
        raise PresentationError("top level must be an object")
    for key in ("delta", "tau"):
        if key in document:
            raise PresentationError("non-trimmed extensions out of scope", key)
    field_ = _parse_field(document.get("field"))

    if "family" in document:
        if document["family"] != "K":
            raise PresentationError("only family 'K' is available", "family")
        alpha = _scalar(_require(document, "alpha", ""), field_, "alpha")
        return family_K(alpha, field_)

    base = _require(document, "base", "")
    q12 = _scalar(_require(base, "q12", "base"), field_, "base.q12")
    q11 = _scalar(_require(base, "q11", "base"), field_, "base.q11")
    P = _require(document, "P", "")
    p12 = _scalar(_require(P, "p12", "P"), field_, "P.p12")
    p11 = _scalar(_require(P, "p11", "P"), field_, "P.p11")
    sigma = _require(document, "sigma", "")
    out = [[[[None] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]

    def sub(node, path):
        if not isinstance(node, list) or len(node) != 2:
            raise PresentationError("expected a list of length 2", path)
        return node

    for i in range(2):
        li = sub(sub(sigma, "sigma")[i], f"sigma[{i}]")
        for j in range(2):
            lj = sub(li[j], f"sigma[{i}][{j}]")
            for s in range(2):
                ls = sub(lj[s], f"sigma[{i}][{j}][{s}]")
                for t in range(2):
                    out[i][j][s][t] = _scalar(ls[t], field_, f"sigma[{i}][{j}][{s}][{t}]")
    if not q12:
        raise PresentationError("q12 must be nonzero", "base.q12")
    if not p12:
        raise PresentationError("p12 must be nonzero", "P.p12")
    return make_de_data(q12, q11, p12, p11, out, field_)


def de_data_to_json(de: DEData) -> dict:
    return {
        "field": de.field.describe(),
        "base": {"q12": str(de.base.q12), "q11": str(de.base.q11)},
        "P": {"p12": str(de.p12), "p11": str(de.p11)},
        "sigma": [[[[str(de.sigma[i][j][s][t]) for t in range(2)] for s in range(2)]
                   for j in range(2)] for i in range(2)],
    }
