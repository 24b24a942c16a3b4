"""Noncommutative polynomials, deglex rewriting, overlaps and PBW normal words.

Words are tuples of generator indices.  Generators are ordered by index, so
for the four-generator algebras ``x1 < x2 < y1 < y2``.  A rewrite rule replaces
its leading word by a tail of strictly smaller words; reduction always rewrites
the leftmost occurrence of a leading word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import QQ

Word = tuple

DEFAULT_NAMES = ("x1", "x2", "y1", "y2")


class RewritingError(ValueError):
    pass


class UncertifiedSystemError(RuntimeError):
    """Raised when homology is requested over a non-confluent rewrite system."""


def deglex_key(w: Word):
    return (len(w), w)


def deglex_compare(w1: Word, w2: Word) -> int:
    """-1, 0 or 1: degree first, then left-lexicographic on generator index."""
    k1, k2 = deglex_key(w1), deglex_key(w2)
    return (k1 > k2) - (k1 < k2)


class NcPolynomial:
    """A finite linear combination of words; zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                w = tuple(w)
                c = clean.get(w, 0) + c
                if c:
                    clean[w] = c
                else:
                    clean.pop(w, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "NcPolynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, word: Word, coef=1) -> "NcPolynomial":
        return cls._raw({tuple(word): coef}) if coef else cls._raw({})

    @classmethod
    def gen(cls, index: int, coef=1) -> "NcPolynomial":
        return cls.monomial((index,), coef)

    @classmethod
    def constant(cls, c) -> "NcPolynomial":
        return cls.monomial((), c)

    @classmethod
    def zero(cls) -> "NcPolynomial":
        return cls._raw({})

    @property
    def terms(self) -> dict:
        return self._terms

    def items(self):
        """Terms in deglex-descending word order."""
        return sorted(self._terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def words(self):
        return self._terms.keys()

    def coefficient(self, word: Word):
        return self._terms.get(tuple(word), 0)

    def constant_term(self):
        return self._terms.get((), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self) -> set:
        return {len(w) for w in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree of a homogeneous polynomial; ``None`` for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise RewritingError("polynomial is not homogeneous")
        return next(iter(ds))

    def leading_word(self) -> Word:
        if not self._terms:
            raise RewritingError("zero polynomial has no leading word")
        return max(self._terms, key=deglex_key)

    def leading_coefficient(self):
        return self._terms[self.leading_word()]

    def map_coefficients(self, f) -> "NcPolynomial":
        return NcPolynomial({w: f(c) for w, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, NcPolynomial):
            other = NcPolynomial.constant(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NcPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NcPolynomial._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcPolynomial):
            other = NcPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NcPolynomial":
        if not c:
            return NcPolynomial._raw({})
        out = {}
        for w, v in self._terms.items():
            v = v * c
            if v:
                out[w] = v
        return NcPolynomial._raw(out)

    def __mul__(self, other):
        """Free-algebra product (concatenation of words)."""
        if not isinstance(other, NcPolynomial):
            return self.scale(other)
        out = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u + v
                c = out.get(w, 0) + a * b
                if c:
                    out[w] = c
                else:
                    out.pop(w, None)
        return NcPolynomial._raw(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, NcPolynomial):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"NcPolynomial({render_polynomial(self)})"


# ---------------------------------------------------------------------------
# rendering and parsing

def render_word(word: Word, names: Sequence[str] = DEFAULT_NAMES, normal: bool = True) -> str:
    """``x1^2*y2`` for normal words, ``x2.x1`` for explicit letter sequences."""
    if not word:
        return "1"
    if not normal:
        return ".".join(names[g] for g in word)
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        e = j - i
        parts.append(names[word[i]] if e == 1 else f"{names[word[i]]}^{e}")
        i = j
    return "*".join(parts)


def render_polynomial(p: NcPolynomial, names: Sequence[str] = DEFAULT_NAMES, normal: bool = True) -> str:
    if p.is_zero():
        return "0"
    out = []
    for w, c in p.items():
        s = str(c)
        sign = "-" if s.startswith("-") else "+"
        s = s.lstrip("-")
        out.append(f"{sign}({s})*{render_word(w, names, normal)}")
    return " ".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def parse_polynomial(text: str, names: Sequence[str] = DEFAULT_NAMES, field=QQ) -> NcPolynomial:
    """Parse sums of products such as ``x2.x1 + x1*x2``, ``-(3/5)*x2*y1`` or ``x1^2*y2``.

    Letters in a product may be joined by ``*`` or ``.``; a coefficient is an
    integer or rational, optionally parenthesised; ``^`` takes an integer exponent.
    """
    index = {n: i for i, n in enumerate(names)}
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, ident, sym = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif ident is not None:
            if ident not in index:
                raise RewritingError(f"unknown generator {ident!r} in {text!r}")
            tokens.append(("gen", index[ident]))
        else:
            tokens.append(("sym", sym))
        pos = m.end()
    if not tokens:
        raise RewritingError("empty polynomial expression")

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take(kind=None, value=None):
        nonlocal i
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise RewritingError(f"malformed polynomial {text!r} near token {i}")
        i += 1
        return tok

    def factor():
        kind, val = peek()
        if kind == "num":
            take()
            return field(val), ()
        if kind == "gen":
            take()
            e = 1
            if peek() == ("sym", "^"):
                take()
                e = int(take("num")[1])
            return field(1), (val,) * e
        if (kind, val) == ("sym", "("):
            take()
            neg = False
            if peek() == ("sym", "-"):
                take()
                neg = True
            c = field(take("num")[1])
            take("sym", ")")
            return (-c if neg else c), ()
        raise RewritingError(f"malformed polynomial {text!r} near token {i}")

    result = NcPolynomial.zero()
    first = True
    while i < len(tokens):
        sign = 1
        if peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if take()[1] == "-" else 1
        elif not first:
            raise RewritingError(f"expected '+' or '-' in {text!r}")
        first = False
        coef, word = factor()
        while peek() in (("sym", "*"), ("sym", ".")):
            take()
            c, w = factor()
            coef = coef * c
            word = word + w
        result = result + NcPolynomial.monomial(word, coef * sign)
    return result


# ---------------------------------------------------------------------------
# rewrite systems

@dataclass(frozen=True)
class RewriteRule:
    lead: Word
    tail: NcPolynomial

    def __post_init__(self):
        if not self.lead:
            raise RewritingError("a rule cannot rewrite the empty word")
        for w in self.tail.words():
            if deglex_key(w) >= deglex_key(self.lead):
                raise RewritingError(f"tail word {w} is not smaller than lead {self.lead}")
            if len(w) != len(self.lead):
                raise RewritingError(f"tail word {w} has a different degree than lead {self.lead}")

    def as_relation(self) -> NcPolynomial:
        return NcPolynomial.monomial(self.lead, 1) - self.tail


@dataclass(frozen=True)
class Overlap:
    left: int   # rule whose lead is a prefix of word
    right: int  # rule whose lead is a suffix of word
    word: Word
    shift: int  # position where the right lead starts


@dataclass
class GSReport:
    resolvable: bool
    overlaps: list
    failures: list  # (Overlap, nonzero residue)


class RewriteSystem:
    """An immutable set of oriented rules with deglex order; queries are memoised."""

    def __init__(self, rules: Iterable[RewriteRule], names: Sequence[str] = DEFAULT_NAMES, field=QQ):
        self.rules = tuple(rules)
        self.names = tuple(names)
        self.field = field
        self.n_generators = len(self.names)
        self._by_lead = {}
        for k, r in enumerate(self.rules):
            if any(g >= self.n_generators for g in r.lead):
                raise RewritingError(f"rule lead {r.lead} uses an unknown generator")
            if r.lead in self._by_lead:
                raise RewritingError(f"two rules share the lead {self.render_word(r.lead, False)}")
            self._by_lead[r.lead] = k
        for a in self.rules:
            for b in self.rules:
                if a is not b and _contains(a.lead, b.lead):
                    raise RewritingError(
                        f"lead {self.render_word(a.lead, False)} contains lead "
                        f"{self.render_word(b.lead, False)}")
        self._lead_lengths = sorted({len(r.lead) for r in self.rules})
        self._nf_word = {}
        self._monomials = {}
        self._certified = None

    # -- rendering ---------------------------------------------------------
    def render_word(self, word: Word, normal: bool = True) -> str:
        return render_word(word, self.names, normal)

    def render(self, p: NcPolynomial, normal: bool = True) -> str:
        return render_polynomial(p, self.names, normal)

    def parse(self, text: str) -> NcPolynomial:
        return parse_polynomial(text, self.names, self.field)

    def gen(self, name_or_index) -> NcPolynomial:
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return NcPolynomial.gen(i, self.field(1))

    # -- reduction -----------------------------------------------------------
    def find_reducible(self, word: Word):
        """Leftmost occurrence ``(position, rule index)`` of a lead in ``word``, or None."""
        by_lead = self._by_lead
        for i in range(len(word)):
            for L in self._lead_lengths:
                if i + L > len(word):
                    break
                k = by_lead.get(word[i:i + L])
                if k is not None:
                    return i, k
        return None

    def is_normal(self, word: Word) -> bool:
        return self.find_reducible(tuple(word)) is None

    def rewrite_at(self, word: Word, pos: int, rule_index: int) -> NcPolynomial:
        rule = self.rules[rule_index]
        L = len(rule.lead)
        if word[pos:pos + L] != rule.lead:
            raise RewritingError("rule does not apply at that position")
        pre, post = word[:pos], word[pos + L:]
        return NcPolynomial._raw({pre + w + post: c for w, c in rule.tail.terms.items()})

    def normal_form_word(self, word: Word) -> NcPolynomial:
        word = tuple(word)
        cached = self._nf_word.get(word)
        if cached is not None:
            return cached
        hit = self.find_reducible(word)
        if hit is None:
            result = NcPolynomial._raw({word: self.field(1)})
        else:
            result = self._nf_terms(self.rewrite_at(word, *hit).terms)
        self._nf_word[word] = result
        return result

    def _nf_terms(self, terms: dict) -> NcPolynomial:
        out = {}
        for w, c in terms.items():
            for u, d in self.normal_form_word(w).terms.items():
                v = out.get(u, 0) + c * d
                if v:
                    out[u] = v
                else:
                    out.pop(u, None)
        return NcPolynomial._raw(out)

    def normal_form(self, p: NcPolynomial) -> NcPolynomial:
        """Reduce every word to irreducible form; the result is linear in ``p``."""
        f = self.field
        return self._nf_terms({w: f(c) for w, c in p.terms.items()})

    def multiply(self, p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
        return self.normal_form(p * q)

    # -- overlaps --------------------------------------------------------------
    def critical_overlaps(self, degree_bound: int) -> list:
        out = []
        for a, ra in enumerate(self.rules):
            for b, rb in enumerate(self.rules):
                la, lb = ra.lead, rb.lead
                for k in range(1, min(len(la), len(lb))):
                    if la[-k:] == lb[:k]:
                        w = la + lb[k:]
                        if len(w) <= degree_bound:
                            out.append(Overlap(a, b, w, len(la) - k))
        out.sort(key=lambda o: (deglex_key(o.word), o.left, o.right))
        return out

    def s_polynomial(self, ov: Overlap) -> NcPolynomial:
        left = self.rewrite_at(ov.word, 0, ov.left)
        right = self.rewrite_at(ov.word, ov.shift, ov.right)
        return self.normal_form(left - right)

    def gs_basis_check(self, degree_bound: int) -> GSReport:
        overlaps = self.critical_overlaps(degree_bound)
        failures = []
        for ov in overlaps:
            r = self.s_polynomial(ov)
            if r:
                failures.append((ov, r))
        return GSReport(not failures, overlaps, failures)

    def certified(self) -> bool:
        """Whether every overlap resolves; overlaps of two leads have degree < their sum."""
        if self._certified is None:
            bound = 2 * max(self._lead_lengths, default=1) - 1
            self._certified = self.gs_basis_check(bound).resolvable
        return self._certified

    def require_certified(self):
        if not self.certified():
            raise UncertifiedSystemError(
                "rewrite system has unresolved overlaps; refusing to compute homology")

    # -- PBW basis -------------------------------------------------------------
    def normal_monomials(self, degree: int) -> list:
        """Irreducible words of the given degree in deglex (= lex) order."""
        cached = self._monomials.get(degree)
        if cached is not None:
            return cached
        if degree == 0:
            words = [()]
        else:
            words = []
            for u in self.normal_monomials(degree - 1):
                for g in range(self.n_generators):
                    w = u + (g,)
                    if not self._suffix_reducible(w):
                        words.append(w)
        self._monomials[degree] = words
        return words

    def _suffix_reducible(self, w: Word) -> bool:
        for L in self._lead_lengths:
            if L <= len(w) and w[len(w) - L:] in self._by_lead:
                return True
        return False

    def monomial_index(self, degree: int) -> dict:
        key = ("index", degree)
        cached = self._monomials.get(key)
        if cached is None:
            cached = {w: i for i, w in enumerate(self.normal_monomials(degree))}
            self._monomials[key] = cached
        return cached

    def hilbert_coefficients(self, max_degree: int) -> list:
        return [len(self.normal_monomials(d)) for d in range(max_degree + 1)]

    def dim(self, degree: int) -> int:
        return len(self.normal_monomials(degree)) if degree >= 0 else 0


def _contains(big: Word, small: Word) -> bool:
    L = len(small)
    return any(big[i:i + L] == small for i in range(len(big) - L + 1))


def parse_word(text: str, names=DEFAULT_NAMES) -> Word:
    p = parse_polynomial(text, names)
    if len(p) != 1:
        raise RewritingError(f"{text!r} is not a single word")
    return next(iter(p.words()))


def make_rewrite_system(pres) -> RewriteSystem:
    """Orient the relations of a presentation by their deglex-largest words.

    Relations are processed degree by degree: each is reduced by the rules of
    lower degree, then relations of one degree are interreduced so that every
    lead is distinct and no tail contains a lead.  Linearly dependent relations
    drop out; a relation that is zero as given is rejected.
    """
    from .linalg import Subspace

    field = pres.field
    names = tuple(pres.names)
    relations = [r.map_coefficients(field) for r in pres.relations]
    for r in relations:
        if r.is_zero():
            raise RewritingError("degenerate relation 0 = 0")
        if not r.is_homogeneous():
            raise RewritingError(f"relation {render_polynomial(r, names, False)} is not homogeneous")
        if r.degree() == 0:
            raise RewritingError("a nonzero constant relation collapses the algebra")
    rules = []
    for d in sorted({r.degree() for r in relations}):
        current = RewriteSystem(rules, names, field)
        reduced = [current.normal_form(r) for r in relations if r.degree() == d]
        reduced = [r for r in reduced if r]
        if not reduced:
            continue
        coords = sorted({w for r in reduced for w in r.words()}, key=deglex_key)
        index = {w: i for i, w in enumerate(coords)}
        span = Subspace.span([{index[w]: c for w, c in r.terms.items()} for r in reduced], len(coords))
        for vec in span.basis:
            piv = max(vec)
            tail = NcPolynomial({coords[i]: -c for i, c in vec.items() if i != piv})
            rules.append(RewriteRule(coords[piv], tail))
    return RewriteSystem(rules, names, field)


def free_system(names: Sequence[str] = DEFAULT_NAMES, field=QQ) -> RewriteSystem:
    return RewriteSystem([], names, field)
