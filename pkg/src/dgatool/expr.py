"""Tiny parser for polynomial expressions such as ``"x6^2 - 1/2*a*b"``.

A parsed expression is a list of ``(coeff, [(name, exponent), ...])`` terms.
Names are resolved by the caller: against generators for Sullivan models,
against basis labels (then products of labels) for table algebras.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .linalg import to_fraction

_NUM = re.compile(r"^\d+(/\d+)?$")


class ExpressionError(ValueError):
    pass


def _split_terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if not text:
        raise ExpressionError("empty expression")
    out, sign, buf, depth = [], 1, "", 0
    for ch in text:
        if ch in "+-" and depth == 0 and buf.strip() and not buf.rstrip().endswith(("*", "^")):
            out.append((sign, buf.strip()))
            sign, buf = (1 if ch == "+" else -1), ""
        elif ch in "+-" and not buf.strip():
            sign *= 1 if ch == "+" else -1
        else:
            depth += ch == "("
            depth -= ch == ")"
            buf += ch
    if not buf.strip():
        raise ExpressionError(f"dangling operator in {text!r}")
    out.append((sign, buf.strip()))
    return out


def split_term(body: str) -> tuple[Fraction, str]:
    """Peel leading numeric factors off a term; returns (coefficient, rest)."""
    coeff = Fraction(1)
    parts = [p.strip() for p in re.split(r"\*|\s+", body) if p.strip()]
    while parts and (_NUM.match(parts[0]) or (parts[0].startswith("(") and parts[0].endswith(")"))):
        coeff *= to_fraction(parts.pop(0).strip("()"))
    rest = "*".join(parts)
    return coeff, rest


def parse_factors(rest: str) -> list[tuple[str, int]]:
    if not rest:
        return []
    out = []
    for f in rest.split("*"):
        f = f.strip()
        if "^" in f:
            name, e = f.split("^", 1)
            if not e.strip().isdigit():
                raise ExpressionError(f"bad exponent in {f!r}")
            out.append((name.strip(), int(e)))
        else:
            out.append((f, 1))
    return out


def parse_terms(text: str) -> list[tuple[Fraction, str]]:
    """Signed terms as (coefficient, monomial text)."""
    if text.strip() == "0":
        return []
    terms = []
    for sign, body in _split_terms(text):
        c, rest = split_term(body)
        terms.append((sign * c, rest))
    return terms


def parse_polynomial(text_or_terms) -> list[tuple[Fraction, list[tuple[str, int]]]]:
    """Parse a string or the JSON term-list form into (coeff, factors) pairs."""
    if isinstance(text_or_terms, str):
        return [(c, parse_factors(rest)) for c, rest in parse_terms(text_or_terms)]
    out = []
    for term in text_or_terms:
        mono = [(str(n), int(e)) for n, e in term.get("monomial", [])]
        out.append((to_fraction(term.get("coeff", 1)), mono))
    return out


def format_polynomial(terms: Sequence[tuple[Fraction, Sequence[tuple[str, int]]]]) -> list[dict]:
    from .linalg import frac_str

    return [{"coeff": frac_str(c), "monomial": [[n, e] for n, e in mono]} for c, mono in terms]


def parse_element(A, text: str, degree: int | None = None):
    """Evaluate ``text`` inside the table algebra ``A``.

    Each term's monomial is looked up as a whole basis label first, then as a
    product of labels with optional ``^`` powers; ``1`` is the unit.
    """
    from .algebra import Element

    result = None
    for c, rest in parse_terms(text):
        if not rest or rest == "1":
            x = A.unit()
        else:
            try:
                x = A.basis_element(rest)
            except KeyError:
                x = None
                for name, e in parse_factors(rest):
                    try:
                        g = A.basis_element(name)
                    except KeyError:
                        raise ExpressionError(f"unknown symbol {name!r} in {text!r}") from None
                    p = g ** e
                    x = p if x is None else x * p
        x = c * x
        if result is None:
            result = x
        elif x.degree != result.degree:
            raise ExpressionError(f"inhomogeneous expression {text!r}")
        else:
            result = result + x
    if result is None:
        if degree is None:
            raise ExpressionError("cannot infer the degree of 0; pass degree")
        return A.zero(degree)
    if degree is not None and result.degree != degree:
        raise ExpressionError(f"{text!r} has degree {result.degree}, expected {degree}")
    return result
