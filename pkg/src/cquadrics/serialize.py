"""Canonical text serialization: every document is JSON with sorted keys,
rationals as "p/q" strings, and a schema version field.  Two runs on the
same input produce byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .broken import BrokenQuadric, ExteriorTuple
from .fields import QQ, PrimeField
from .linalg import Matrix
from .poly import UniPoly
from .subspace import Flag, Subspace

SCHEMA = "cquadrics.v1"


class ParseError(ValueError):
    pass


def parse_field(doc):
    f = doc.get("field", "rationals")
    if f == "rationals":
        return QQ
    if isinstance(f, dict) and "prime" in f:
        try:
            return PrimeField(int(f["prime"]))
        except ValueError as e:
            raise ParseError(str(e)) from None
    raise ParseError(f"unknown field spec {f!r}")


def fmt_scalar(x, field=QQ):
    return field.fmt(x)


def parse_scalar(s, field=QQ):
    try:
        return field.parse(s) if isinstance(s, str) else field.of(int(s))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad scalar {s!r}: {e}") from None


def matrix_doc(m: Matrix, field=QQ):
    return [[fmt_scalar(a, field) for a in r] for r in m.rows]


def parse_matrix(doc, field=QQ) -> Matrix:
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise ParseError("a matrix must be a list of rows")
    return Matrix([[parse_scalar(a, field) for a in r] for r in doc])


def poly_matrix_doc(m: Matrix, field=QQ):
    out = []
    for r in m.rows:
        row = []
        for p in r:
            if not isinstance(p, UniPoly):
                p = UniPoly.const(p)
            row.append({str(k): fmt_scalar(c, field) for k, c in enumerate(p.coeffs) if c != 0})
        out.append(row)
    return out


def parse_poly_matrix(doc, field=QQ) -> Matrix:
    if not isinstance(doc, list):
        raise ParseError("a polynomial matrix must be a list of rows")
    rows = []
    for r in doc:
        row = []
        for entry in r:
            if isinstance(entry, str):
                row.append(UniPoly.const(parse_scalar(entry, field)))
                continue
            if not isinstance(entry, dict):
                raise ParseError("polynomial entries are exponent -> coefficient maps")
            coeffs = {}
            for k, v in entry.items():
                try:
                    e = int(k)
                except ValueError:
                    raise ParseError(f"bad exponent {k!r}") from None
                if e < 0:
                    raise ParseError("negative exponents are not allowed")
                coeffs[e] = parse_scalar(v, field)
            size = max(coeffs) + 1 if coeffs else 0
            row.append(UniPoly([coeffs.get(i, 0) for i in range(size)]))
        rows.append(row)
    return Matrix(rows)


def multi_poly_doc(F: dict, field=QQ):
    return {" ".join(str(e) for e in exps): fmt_scalar(c, field) for exps, c in F.items() if c != 0}


def parse_multi_poly(doc, nvars, field=QQ):
    out = {}
    for k, v in doc.items():
        exps = tuple(int(x) for x in k.split())
        if len(exps) != nvars or any(e < 0 for e in exps):
            raise ParseError(f"bad monomial key {k!r} for {nvars} variables")
        out[exps] = parse_scalar(v, field)
    return out


def broken_quadric_doc(bq: BrokenQuadric):
    return {
        "d": bq.d,
        "dual_side": bq.on_dual,
        "flag": [matrix_doc(s.basis, bq.field) for s in bq.flag.steps[1:-1]],
        "forms": [matrix_doc(f, bq.field) for f in bq.forms],
        "ranks": list(bq.ranks),
    }


def parse_broken_quadric(doc, field=QQ) -> BrokenQuadric:
    try:
        d = int(doc["d"])
        subs = [Subspace.full(d)]
        for rows in doc["flag"]:
            subs.append(Subspace(d, parse_matrix(rows, field)))
        subs.append(Subspace.zero(d))
        forms = [parse_matrix(f, field) for f in doc["forms"]]
        return BrokenQuadric(Flag(subs), forms, on_dual=bool(doc.get("dual_side", False)), field=field)
    except (KeyError, TypeError) as e:
        raise ParseError(f"bad broken quadric document: {e}") from None


def exterior_doc(t: ExteriorTuple):
    return {
        "d": t.d,
        "dual_side": t.on_dual,
        "factors": [matrix_doc(f, t.field) for f in t.factors],
    }


def parse_exterior(doc, field=QQ) -> ExteriorTuple:
    try:
        factors = [parse_matrix(f, field) for f in doc["factors"]]
        return ExteriorTuple(factors, on_dual=bool(doc.get("dual_side", False)), field=field)
    except (KeyError, TypeError) as e:
        raise ParseError(f"bad exterior tuple document: {e}") from None


def algebra_doc(A, field=QQ):
    return {
        "matrices": [matrix_doc(X, field) for X in A.mats],
        "cyclic": [fmt_scalar(c, field) for c in A.cyclic],
    }


def parse_algebra(doc, field=QQ):
    from .artin import ArtinAlgebra

    try:
        mats = [parse_matrix(m, field) for m in doc["matrices"]]
        v = [parse_scalar(c, field) for c in doc["cyclic"]]
        return ArtinAlgebra(mats, v)
    except (KeyError, TypeError) as e:
        raise ParseError(f"bad algebra document: {e}") from None
    except ValueError as e:
        raise ParseError(str(e)) from None


def decomp_doc(dec, field=QQ):
    rows = {}
    for dl in range(dec.s + 1):
        if any(dec.delta[dl]):
            rows[str(dl)] = list(dec.delta[dl])
    bases = {}
    for (dl, i), m in sorted(dec.bases.items()):
        if m.nrows:
            bases[f"{dl},{i}"] = matrix_doc(m, field)
    return {
        "socle_degree": dec.s,
        "hilbert": list(dec.hilbert),
        "delta": rows,
        "bases": bases,
    }


def dump_document(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"
