"""JSON documents for kernels and piecewise fields.

Kernel documents carry a "field" tag, "exact" or "float". Exact documents
store every scalar as a "p/q" string and float documents store plain JSON
numbers; mixing the two in one document is rejected so golden files stay
bit-exact.
"""

import json

from .filtering import PiecewiseField
from .kernel import SiacKernel
from .rational import format_rational, parse_rational

FIELD_BASIS = "legendre-modal-[-1,1]"


def _encode(values, exact):
    if exact:
        return [format_rational(v) for v in values]
    return [float(v) for v in values]


def _decode(values, exact, what):
    if exact:
        if not all(isinstance(v, str) for v in values):
            raise ValueError(f"exact document requires 'p/q' strings in {what}")
        return tuple(parse_rational(v) for v in values)
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        raise ValueError(f"float document requires numbers in {what}")
    return tuple(float(v) for v in values)


def kernel_to_document(kernel, exact, provenance="divdiff"):
    return {
        "degree": kernel.degree,
        "knots": _encode(kernel.knots, exact),
        "raw_coefficients": _encode(kernel.raw_coefficients, exact),
        "normalized_coefficients": _encode(kernel.normalized_coefficients, exact),
        "field": "exact" if exact else "float",
        "provenance": provenance,
    }


def kernel_from_document(doc):
    tag = doc.get("field")
    if tag not in ("exact", "float"):
        raise ValueError(f"unknown scalar field tag: {tag!r}")
    exact = tag == "exact"
    return SiacKernel(
        degree=int(doc["degree"]),
        knots=_decode(doc["knots"], exact, "knots"),
        raw_coefficients=_decode(doc["raw_coefficients"], exact, "raw_coefficients"),
        normalized_coefficients=_decode(
            doc["normalized_coefficients"], exact, "normalized_coefficients"
        ),
    )


def write_kernel(path, kernel, exact, provenance="divdiff"):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(kernel_to_document(kernel, exact, provenance), f, indent=2)
        f.write("\n")


def read_kernel(path):
    with open(path, encoding="utf-8") as f:
        return kernel_from_document(json.load(f))


def field_to_document(field):
    return {
        "breakpoints": list(field.breakpoints),
        "cells": [list(c) for c in field.cells],
        "basis": FIELD_BASIS,
    }


def field_from_document(doc):
    basis = doc.get("basis")
    if basis != FIELD_BASIS:
        raise ValueError(f"unsupported field basis: {basis!r}")
    return PiecewiseField(tuple(doc["breakpoints"]), tuple(map(tuple, doc["cells"])))


def write_field(path, field):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(field_to_document(field), f, indent=2)
        f.write("\n")


def read_field(path):
    with open(path, encoding="utf-8") as f:
        return field_from_document(json.load(f))
