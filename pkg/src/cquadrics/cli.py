"""Command-line front end.

Reads a JSON job document, runs one operation, and emits a canonical JSON
result document (sorted keys, "p/q" rationals) on stdout.  Exit codes:
0 success, 1 parse error, 2 precondition violation (the message names the
failed invariant), 3 internal cross-check mismatch (oracle disagreement,
which is always a bug).

The `verify-golden` command runs the built-in suite of worked examples and
needs no input; its output is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import serialize as ser
from .artin import ArtinAlgebra, apolar_algebra, assoc_graded, hilbert_function, symmetric_decomposition
from .broken import (
    BrokenQuadric,
    dualize,
    from_exterior,
    limit_dvr,
    limit_minor,
    to_exterior,
    tyrrell_coords,
    tyrrell_point,
)
from .compat import (
    anticompatible_space,
    compat_equations,
    compatible_space,
    is_anticompatible,
    is_compatible,
    jordan_block,
    tangent_dim,
)
from .fields import QQ
from .linalg import Matrix
from .serialize import ParseError
from .torus import torus_limit, torus_limit_oracle

TRUNC_ENV = "CQUADRICS_DVR_MAX_TRUNC"


class OracleMismatch(Exception):
    pass


def _dvr_cap():
    v = os.environ.get(TRUNC_ENV)
    return int(v) if v else None


def cmd_limit(payload, field, args):
    fam = ser.parse_poly_matrix(payload["family"], field)
    bq = limit_minor(fam, field=field)
    out = {"broken_quadric": ser.broken_quadric_doc(bq)}
    if args.oracle:
        other = limit_dvr(fam, field=field, max_trunc=_dvr_cap())
        if other != bq:
            raise OracleMismatch("limit_dvr disagrees with limit_minor")
        out["oracle_agrees"] = True
    return out


def cmd_dualize(payload, field, args):
    bq = ser.parse_broken_quadric(payload["broken_quadric"], field)
    return {"broken_quadric": ser.broken_quadric_doc(dualize(bq))}


def cmd_exterior(payload, field, args):
    bq = ser.parse_broken_quadric(payload["broken_quadric"], field)
    return {"exterior": ser.exterior_doc(to_exterior(bq))}


def cmd_from_exterior(payload, field, args):
    t = ser.parse_exterior(payload["exterior"], field)
    return {"broken_quadric": ser.broken_quadric_doc(from_exterior(t))}


def cmd_tyrrell(payload, field, args):
    ys = [ser.parse_scalar(s, field) for s in payload["ys"]]
    xs = [ser.parse_scalar(s, field) for s in payload["xs"]]
    return {"exterior": ser.exterior_doc(tyrrell_point(ys, xs, field=field))}


def cmd_tyrrell_coords(payload, field, args):
    if "exterior" in payload:
        obj = ser.parse_exterior(payload["exterior"], field)
    else:
        obj = ser.parse_broken_quadric(payload["broken_quadric"], field)
    basis = ser.parse_matrix(payload["basis"], field) if "basis" in payload else None
    ys, xs = tyrrell_coords(obj, basis=basis)
    return {
        "ys": [ser.fmt_scalar(y, field) for y in ys],
        "xs": [ser.fmt_scalar(x, field) for x in xs],
    }


def cmd_compat_space(payload, field, args):
    bq = ser.parse_broken_quadric(payload["broken_quadric"], field)
    space = anticompatible_space(bq) if payload.get("anti") else compatible_space(bq)
    return {
        "dimension": space.dim,
        "basis": [ser.matrix_doc(b, field) for b in space.basis],
    }


def cmd_is_compatible(payload, field, args):
    bq = ser.parse_broken_quadric(payload["broken_quadric"], field)
    x = ser.parse_matrix(payload["endomorphism"], field)
    fn = is_anticompatible if payload.get("anti") else is_compatible
    return {"compatible": fn(x, bq)}


def cmd_equations(payload, field, args):
    action = [ser.parse_matrix(m, field) for m in payload["action"]]
    basis = ser.parse_matrix(payload["chart_basis"], field) if "chart_basis" in payload else None
    system = compat_equations(action, chart_basis=basis, companion_params=bool(payload.get("companion")))
    polys = []
    for p in system.polys:
        polys.append({" ".join(str(e) for e in exps): ser.fmt_scalar(c, field) for exps, c in sorted(p.terms.items())})
    return {"variables": list(system.var_names), "polynomials": polys}


def cmd_tangent(payload, field, args):
    action = [ser.parse_matrix(m, field) for m in payload["action"]]
    basis = ser.parse_matrix(payload["chart_basis"], field) if "chart_basis" in payload else None
    ys = [ser.parse_scalar(s, field) for s in payload["point"]["ys"]]
    xs = [ser.parse_scalar(s, field) for s in payload["point"]["xs"]]
    dim = tangent_dim(action, (ys, xs), chart_basis=basis, fiber_only=bool(payload.get("fiber_only")))
    return {"tangent_dimension": dim}


def cmd_decompose(payload, field, args):
    A = ser.parse_algebra(payload["algebra"], field)
    alpha = [ser.parse_scalar(s, field) for s in payload["functional"]] if "functional" in payload else None
    form = ser.parse_matrix(payload["form"], field) if "form" in payload else None
    dec = symmetric_decomposition(A, alpha=alpha, form=form)
    return {"decomposition": ser.decomp_doc(dec, field)}


def cmd_apolar(payload, field, args):
    nvars = int(payload["nvars"])
    F = ser.parse_multi_poly(payload["polynomial"], nvars, field)
    A, alpha = apolar_algebra(F, nvars)
    return {
        "algebra": ser.algebra_doc(A, field),
        "functional": [ser.fmt_scalar(c, field) for c in alpha],
        "dimension": A.dim,
        "hilbert": list(hilbert_function(A)),
    }


def cmd_gr(payload, field, args):
    A = ser.parse_algebra(payload["algebra"], field)
    gr, weights = assoc_graded(A)
    return {
        "algebra": ser.algebra_doc(gr, field),
        "weights": list(weights),
        "hilbert": list(hilbert_function(gr)),
    }


def cmd_torus_limit(payload, field, args):
    A = ser.parse_algebra(payload["algebra"], field)
    alpha = [ser.parse_scalar(s, field) for s in payload["functional"]]
    res = torus_limit(A, alpha, field=field)
    out = {
        "graded_algebra": ser.algebra_doc(res.gr, field),
        "weights": list(res.weights),
        "decomposition": ser.decomp_doc(res.decomp, field),
        "ideals": [ser.matrix_doc(i.basis, field) for i in res.ideals],
        "pairing_side": ser.broken_quadric_doc(res.bq_phi),
        "broken_quadric": ser.broken_quadric_doc(res.bq),
    }
    if args.oracle:
        other = torus_limit_oracle(A, alpha, field=field)
        if other != res.bq:
            raise OracleMismatch("torus_limit_oracle disagrees with torus_limit")
        out["oracle_agrees"] = True
    return out


def _golden_cases():
    from .poly import UniPoly

    F = Fraction
    Z = UniPoly()

    def tp(k, v=1):
        return UniPoly.t_power(k, F(v))

    cases = []

    # limit of the diagonal four-dimensional family diag(1, t, t^2, t^2)
    fam = Matrix([[tp(0), Z, Z, Z], [Z, tp(1), Z, Z], [Z, Z, tp(2), Z], [Z, Z, Z, tp(2)]])
    bq = limit_minor(fam)
    exp_flag1 = Matrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    exp_flag2 = Matrix([[0, 0, 1, 0], [0, 0, 0, 1]])
    ok = (
        bq.ranks == (1, 1, 2)
        and bq.flag.steps[1].basis.map(F) == exp_flag1.map(F)
        and bq.flag.steps[2].basis.map(F) == exp_flag2.map(F)
        and [f.rows for f in bq.forms] == [((1,),), ((1,),), ((1, 0), (0, 1))]
        and limit_dvr(fam) == bq
    )
    cases.append(("diagonal_family_limit", ok, {"broken_quadric": ser.broken_quadric_doc(bq)}))

    # the two cross-term families distinguished only at higher order
    h = tp(2, F(1, 2))
    c1 = UniPoly.const(F(1))
    q1 = Matrix([[c1, Z, h, Z], [Z, c1, Z, h], [h, Z, Z, Z], [Z, h, Z, Z]])
    q2 = Matrix([[c1, Z, h, Z], [Z, c1, Z, h], [h, Z, tp(3), Z], [Z, h, Z, Z]])
    b1, b2 = limit_minor(q1), limit_minor(q2)
    ok = b1.ranks == (2, 2) and b2.ranks == (2, 1, 1) and b1 != b2
    cases.append(
        (
            "cross_term_family_limits",
            ok,
            {
                "unperturbed": ser.broken_quadric_doc(b1),
                "perturbed": ser.broken_quadric_doc(b2),
            },
        )
    )

    # duality interchanges the two flags of the diagonal family limit
    dl = dualize(bq)
    ok = (
        dl.ranks == (2, 1, 1)
        and dl.flag.steps[1].basis.map(F) == Matrix([[1, 0, 0, 0], [0, 1, 0, 0]]).map(F)
        and dl.flag.steps[2].basis.map(F) == Matrix([[1, 0, 0, 0]]).map(F)
        and dualize(dl) == bq
    )
    cases.append(("duality_interchanges_flags", ok, {"dual": ser.broken_quadric_doc(dl)}))

    # the planar Gorenstein algebra with Hilbert function (1,2,1,1)
    A, alpha = _planar_example()
    dec = symmetric_decomposition(A, alpha=alpha)
    ok = (
        dec.hilbert == (1, 2, 1, 1)
        and dec.s == 3
        and dec.delta[0] == (1, 1, 1, 1)
        and dec.delta[1] == (0, 1, 0, 0)
        and dec.delta[2] == (0, 0, 0, 0)
        and dec.bases[(1, 1)].rows == ((0, 0, 0, 0, 1),)
    )
    cases.append(("planar_gorenstein_decomposition", ok, {"decomposition": ser.decomp_doc(dec)}))

    # its torus limit: ideal (x), rank pattern (1, 4), oracle agreement
    res = torus_limit(A, alpha)
    oracle = torus_limit_oracle(A, alpha)
    ok = (
        res.bq.ranks == (1, 4)
        and res.ideals[1].basis.rows == ((0, 0, 1, 0, 0),)
        and oracle == res.bq
        and res.bq_phi.ranks == (4, 1)
    )
    cases.append(
        (
            "torus_limit_planar_gorenstein",
            ok,
            {
                "broken_quadric": ser.broken_quadric_doc(res.bq),
                "pairing_side": ser.broken_quadric_doc(res.bq_phi),
                "ideals": [ser.matrix_doc(i.basis) for i in res.ideals],
            },
        )
    )

    # limit of the oriented family degenerating onto the square of a point
    phi_t = Matrix([[Z, Z, Z, c1], [Z, Z, tp(1), Z], [Z, tp(1), Z, Z], [c1, Z, Z, Z]])
    bphi = limit_minor(phi_t, on_dual=True)
    bqd = dualize(bphi)
    ok = (
        bphi.flag.steps[1].basis.map(F) == Matrix([[0, 1, 0, 0], [0, 0, 1, 0]]).map(F)
        and bqd.flag.steps[1].basis.map(F) == Matrix([[1, 0, 0, 0], [0, 0, 0, 1]]).map(F)
        and [f.rows for f in bqd.forms] == [((0, 1), (1, 0)), ((0, 1), (1, 0))]
    )
    cases.append(
        (
            "fat_point_family_limit",
            ok,
            {"pairing_side": ser.broken_quadric_doc(bphi), "broken_quadric": ser.broken_quadric_doc(bqd)},
        )
    )

    # initial ideal of the planar example: in gr, xy = x^2 = y^4 = 0, y^3 != 0
    gr, weights = assoc_graded(A)
    Xg, Yg = gr.mats
    v = Matrix((gr.cyclic,))
    y3 = v * (Yg * Yg * Yg).transpose()
    ok = (
        (Xg * Yg).is_zero()
        and (Xg * Xg).is_zero()
        and not y3.is_zero()
        and (v * (Yg * Yg * Yg * Yg).transpose()).is_zero()
        and hilbert_function(gr) == (1, 2, 1, 1)
    )
    cases.append(("initial_ideal_planar", ok, {"weights": list(weights)}))

    # tangent dimensions for the length-3 fiber over the fat point of a line
    X3 = jordan_block(3)
    rev3 = Matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    amb = tangent_dim([X3], ([F(0), F(0)], [F(0)] * 3), chart_basis=rev3)
    fib = tangent_dim([X3], ([F(0), F(0)], [F(0)] * 3), chart_basis=rev3, fiber_only=True)
    sysf = compat_equations([X3], chart_basis=rev3)
    J = sysf.jacobian(sysf.full_point([F(0)] * 2, [F(0)] * 3))
    eps = (F(1), F(-1), F(0), F(1), F(0))
    first_order = all(sum(J[i, j] * eps[j] for j in range(5)) == 0 for i in range(J.nrows))
    ok = amb == 5 and fib == 3 and first_order
    cases.append(
        (
            "jordan_fiber_tangents",
            ok,
            {"ambient_tangent": amb, "fiber_tangent": fib, "epsilon_vector_in_kernel": first_order},
        )
    )
    return cases


def _planar_example():
    """k[x,y]/(xy, x^2 - y^3) on the basis (1, y, y^2, y^3, x), with the
    functional dual to y^3."""
    X = [[0] * 5 for _ in range(5)]
    Y = [[0] * 5 for _ in range(5)]
    X[4][0] = 1
    X[3][4] = 1
    Y[1][0] = 1
    Y[2][1] = 1
    Y[3][2] = 1
    A = ArtinAlgebra([Matrix(X), Matrix(Y)], (1, 0, 0, 0, 0))
    return A, (0, 0, 0, 1, 0)


def cmd_verify_golden(payload, field, args):
    cases = []
    all_ok = True
    for name, ok, data in _golden_cases():
        cases.append({"name": name, "pass": ok, "data": data})
        all_ok = all_ok and ok
    return {"cases": cases, "all_pass": all_ok}


COMMANDS = {
    "limit": (cmd_limit, True),
    "dualize": (cmd_dualize, True),
    "exterior": (cmd_exterior, True),
    "from-exterior": (cmd_from_exterior, True),
    "tyrrell": (cmd_tyrrell, True),
    "tyrrell-coords": (cmd_tyrrell_coords, True),
    "compat-space": (cmd_compat_space, True),
    "is-compatible": (cmd_is_compatible, True),
    "equations": (cmd_equations, True),
    "tangent": (cmd_tangent, True),
    "decompose": (cmd_decompose, True),
    "apolar": (cmd_apolar, True),
    "gr": (cmd_gr, True),
    "torus-limit": (cmd_torus_limit, True),
    "verify-golden": (cmd_verify_golden, False),
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cquadrics",
        description="Exact computations with broken quadrics and symmetric decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_input) in COMMANDS.items():
        p = sub.add_parser(name)
        if needs_input:
            p.add_argument("input", help="path to a JSON job document, or - for stdin")
        if name in ("limit", "torus-limit"):
            p.add_argument("--oracle", action="store_true", help="also run the independent oracle and compare")
    args = parser.parse_args(argv)
    handler, needs_input = COMMANDS[args.command]
    if not hasattr(args, "oracle"):
        args.oracle = False
    try:
        if needs_input:
            raw = sys.stdin.read() if args.input == "-" else open(args.input).read()
            try:
                payload = json.loads(raw)
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON: {e}") from None
            if not isinstance(payload, dict):
                raise ParseError("the job document must be a JSON object")
            field = ser.parse_field(payload)
        else:
            payload, field = {}, QQ
        result = handler(payload, field, args)
    except (ParseError, FileNotFoundError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 1
    except KeyError as e:
        print(f"parse error: missing field {e}", file=sys.stderr)
        return 1
    except OracleMismatch as e:
        print(f"cross-check mismatch: {e}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return 2
    doc = {"schema": ser.SCHEMA, "command": args.command, "result": result}
    sys.stdout.write(ser.dump_document(doc))
    if args.command == "verify-golden" and not result["all_pass"]:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
