"""JSON model files: table, sullivan and hirsch kinds.

Rationals are written as "p/q" strings. A model argument on the command
line is either a path to such a file or a catalog key.
"""
from __future__ import annotations

import json
import os
from typing import Mapping

from .algebra import Element, TableDGA, build_table_dga, table_description
from .expr import ExpressionError, format_polynomial, parse_polynomial
from .hirsch import HirschData, hirsch_extend
from .linalg import frac_str, to_fraction
from .sullivan import SullivanModel, realize_sullivan

KINDS = ("table", "sullivan", "hirsch")


class ModelNotFound(ValueError):
    pass


def element_terms(x: Element) -> list[dict]:
    """An element as a term list over basis labels."""
    labels = x.algebra.labels(x.degree)
    return [{"coeff": frac_str(c), "monomial": [[labels[i], 1]]} for i, c in enumerate(x.coords) if c]


def element_from_terms(A: TableDGA, expr, degree: int) -> Element:
    """Evaluate a string or term list in ``A``; names are basis labels, possibly raised to powers."""
    if isinstance(expr, str):
        return A.parse(expr, degree)
    out = A.zero(degree)
    for c, mono in parse_polynomial(expr):
        x = A.unit()
        for name, e in mono:
            try:
                x = x * A.basis_element(name) ** e
            except KeyError:
                raise ExpressionError(f"unknown basis label {name!r}") from None
        if x.degree != degree:
            raise ExpressionError(f"term of degree {x.degree} where {degree} was expected")
        out = out + c * x
    return out


def model_to_json(A: TableDGA, flatten: bool = False) -> dict:
    """Serialize ``A`` in the kind it was built from, or as a plain table when ``flatten``."""
    if flatten:
        return table_description(A)
    info = getattr(A, "hirsch", None)
    if info is not None and info.base is not A:
        return {
            "kind": "hirsch",
            "name": A.name,
            "cap": A.cap,
            "base": model_to_json(info.base),
            "generators": [{"name": n, "degree": m} for n, m in info.generators],
            "tau": {n: element_terms(info.tau[n]) for n, _ in info.generators},
        }
    model = getattr(A, "sullivan", None)
    if model is not None:
        out = {
            "kind": "sullivan",
            "name": A.name,
            "cap": A.cap,
            "generators": [{"name": n, "degree": d} for n, d in model.generators],
            "differential": {g: format_polynomial(parse_polynomial(e)) for g, e in model.differential.items()},
        }
        if model.weights is not None:
            out["weights"] = {g: int(w) for g, w in model.weights.items()}
        return out
    return table_description(A)


def model_from_json(data: Mapping) -> TableDGA:
    kind = data.get("kind", "table")
    if kind == "table":
        return build_table_dga(data)
    if kind == "sullivan":
        gens = [(g["name"], int(g["degree"])) for g in data["generators"]]
        model = SullivanModel(gens, dict(data.get("differential", {})), int(data["cap"]), data.get("name", "sullivan"), data.get("weights"))
        return realize_sullivan(model)
    if kind == "hirsch":
        base = data["base"]
        base = load_model(base) if isinstance(base, str) else model_from_json(base)
        gens = [(g["name"], int(g["degree"])) for g in data["generators"]]
        tau = {n: element_from_terms(base, data["tau"][n], m + 1) for n, m in gens}
        weights = data.get("weights")
        cap = data.get("cap")
        h = HirschData(base, gens, tau, None if cap is None else int(cap), data.get("name"), weights)
        return hirsch_extend(h)[0]
    raise ValueError(f"unknown model kind {kind!r}; expected one of {KINDS}")


def dumps(A: TableDGA, flatten: bool = False) -> str:
    return json.dumps(model_to_json(A, flatten), indent=2)


def loads(text: str) -> TableDGA:
    return model_from_json(json.loads(text))


def load_model(arg: str) -> TableDGA:
    """A model file path or a catalog key."""
    if os.path.exists(arg):
        with open(arg) as fh:
            return model_from_json(json.load(fh))
    from .catalog import _catalog, build

    if arg in _catalog():
        return build(arg)
    raise ModelNotFound(f"{arg!r} is neither a model file nor a catalog key")


def same_model(A: TableDGA, B: TableDGA) -> bool:
    """Equal names, labels, structure constants, differential and weights."""
    return (
        A.name == B.name
        and A.structurally_equal(B)
        and all(A.labels(k) == B.labels(k) for k in range(A.cap + 1))
        and A.weights == B.weights
    )


def rationals(v) -> list[str]:
    return [frac_str(to_fraction(x)) for x in v]
