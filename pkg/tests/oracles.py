"""Reference computations that deliberately avoid the engine's fast paths."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from doubleore.rewriting import NcPolynomial


def occurrences(rules, word):
    for k, r in enumerate(rules):
        L = len(r.lead)
        for i in range(len(word) - L + 1):
            if word[i:i + L] == r.lead:
                yield i, k


def step(rules, poly: NcPolynomial, word, pos, k) -> NcPolynomial:
    c = poly.coefficient(word)
    r = rules[k]
    L = len(r.lead)
    repl = NcPolynomial({word[:pos] + w + word[pos + L:]: d * c for w, d in r.tail.terms.items()})
    return poly - NcPolynomial.monomial(word, c) + repl


def reduce_random_order(rules, poly: NcPolynomial, rng: random.Random) -> NcPolynomial:
    """Apply a uniformly random applicable rule occurrence until none is left."""
    while True:
        sites = [(w, i, k) for w in poly.words() for i, k in occurrences(rules, w)]
        if not sites:
            return poly
        w, i, k = rng.choice(sites)
        poly = step(rules, poly, w, i, k)


def all_reduction_results(rules, poly: NcPolynomial) -> set:
    """Every irreducible result reachable by some sequence of single rewrites."""
    seen, finals = set(), set()
    stack = [poly]
    while stack:
        p = stack.pop()
        if p in seen:
            continue
        seen.add(p)
        sites = [(w, i, k) for w in p.words() for i, k in occurrences(rules, w)]
        if not sites:
            finals.add(p)
        for w, i, k in sites:
            stack.append(step(rules, p, w, i, k))
    return finals


def words(n_gens, degree):
    return list(itertools.product(range(n_gens), repeat=degree))


def random_polynomial(rng: random.Random, n_gens=4, max_degree=6, max_terms=5, field=Fraction):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        w = tuple(rng.randrange(n_gens) for _ in range(d))
        terms[w] = field(rng.randint(-5, 5), rng.randint(1, 4))
    return NcPolynomial(terms)


def binomial_series(exponent: int, max_degree: int) -> list:
    """Coefficients of 1/(1-t)^exponent by repeated partial sums."""
    coeffs = [1] + [0] * max_degree
    for _ in range(exponent):
        acc, out = 0, []
        for c in coeffs:
            acc += c
            out.append(acc)
        coeffs = out
    return coeffs
