"""Text and JSON renderings of check, solve and structure results.

Both renderings carry the same fields; the JSON one is versioned by a
top-level "format_version". Nothing here depends on timing unless
``timestamp`` is passed in.
"""
import json

from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from .arith import format_poly, format_rational, poly_coeffs, ratfunc_parts

FORMAT_VERSION = 1


def _coeff_strings(p):
    return [format_rational(c) for c in poly_coeffs(p)]


def scalar_text(x):
    if isinstance(x, PolyElement):
        return format_poly(x)
    if isinstance(x, FracElement):
        num, den = ratfunc_parts(x)
        if den == 1:
            return format_poly(num)
        return f"({format_poly(num)})/({format_poly(den)})"
    return format_rational(x)


def scalar_json(x):
    """Rationals as "p/q"; polynomials as ascending coefficient lists;
    rational functions as {"num": [...], "den": [...]}."""
    if isinstance(x, PolyElement):
        return _coeff_strings(x)
    if isinstance(x, FracElement):
        num, den = ratfunc_parts(x)
        if den == 1:
            return _coeff_strings(num)
        return {'num': _coeff_strings(num), 'den': _coeff_strings(den)}
    return format_rational(x)


def matrix_json(M):
    return [[scalar_json(e) for e in row] for row in M.to_list()]


def matrix_text(M):
    if 0 in M.shape:
        return "({}x{})".format(*M.shape)
    return "[" + "; ".join(", ".join(scalar_text(e) for e in row) for row in M.to_list()) + "]"


def _witness_text(w):
    if w is None:
        return ""
    if isinstance(w, DomainMatrix):
        return matrix_text(w)
    return "(" + ", ".join(scalar_text(e) for e in w) + ")"


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, DomainMatrix):
        return matrix_json(w)
    return [scalar_json(e) for e in w]


# --- check ------------------------------------------------------------------

def check_passed(reports):
    # III-weak is informational
    return all(r.passed for r in reports if r.condition != 'III-weak')


def check_text(reports, warnings=()):
    lines = []
    for rep in reports:
        where = "(global)" if rep.point is None else f"at {rep.point}"
        state = "PASS" if rep.passed else "FAIL"
        if rep.condition == 'III-weak':
            state += " (informational)"
        lines.append(f"condition {rep.condition} {where}: {state}")
        for fail in rep.failures:
            line = f"  i={fail.index}: {fail.description}"
            witness = _witness_text(fail.witness)
            if witness:
                line += f"  witness: {witness}"
            lines.append(line)
    for w in warnings:
        lines.append(f"warning: {w}")
    lines.append(f"result: {'PASS' if check_passed(reports) else 'FAIL'}")
    return "\n".join(lines)


def check_json(reports, warnings=()):
    return {
        'command': 'check',
        'reports': [{
            'condition': rep.condition,
            'point': rep.point_label,
            'passed': rep.passed,
            'failures': [{'index': f.index, 'description': f.description,
                          'witness': _witness_json(f.witness)} for f in rep.failures],
        } for rep in reports],
        'warnings': list(warnings),
        'passed': check_passed(reports),
    }


# --- solve ------------------------------------------------------------------

def _fiber_status(report, d):
    if d > report.generic_dim:
        return "NOT FLAT"
    if d == report.rm:
        return "ok"
    return "rank differs from rm"


def tuple_text(tup):
    return " | ".join(f"phi_{k + 1} = {matrix_text(p)}" for k, p in enumerate(tup.phis))


def solve_text(report, cross_checks=None):
    lines = [f"rm: {report.rm}", f"generic dim: {report.generic_dim}"]
    for x, d in sorted(report.fiber_dims.items(), key=lambda kv: kv[0].sort_key()):
        lines.append(f"fiber dim at {x}: {d}, generic dim: {report.generic_dim}, "
                     f"rm: {report.rm}, {_fiber_status(report, d)}")
    if report.jumps:
        lines.append("jumps: " + ", ".join(str(x) for x in report.jumps))
    for w in report.warnings:
        lines.append(f"warning: {w}")
    if report.kernel_basis is not None:
        lines.append(f"kernel basis ({len(report.kernel_basis)} tuples over QQ[t]):")
        for k, tup in enumerate(report.kernel_basis, 1):
            lines.append(f"  [{k}] {tuple_text(tup)}")
    for x, result in (cross_checks or {}).items():
        lines.append(f"cross-check at {x}: {result}")
    if report.is_vector_bundle:
        lines.append(f"verdict: VECTOR BUNDLE of rank {report.rm}")
    elif report.flat:
        lines.append("verdict: NOT A VECTOR BUNDLE")
    else:
        lines.append("verdict: NOT A VECTOR BUNDLE (NOT FLAT)")
    return "\n".join(lines)


def solve_json(report, cross_checks=None):
    points = sorted(report.fiber_dims, key=lambda x: x.sort_key())
    out = {
        'command': 'solve',
        'rm': report.rm,
        'generic_dim': report.generic_dim,
        'fiber_dims': [{'point': str(x), 'dim': report.fiber_dims[x]} for x in points],
        'jumps': [str(x) for x in report.jumps],
        'flat': report.flat,
        'is_vector_bundle': report.is_vector_bundle,
        'warnings': list(report.warnings),
    }
    if report.kernel_basis is not None:
        out['kernel_basis'] = [[matrix_json(p) for p in tup.phis] for tup in report.kernel_basis]
    if cross_checks:
        out['cross_checks'] = {str(x): r for x, r in cross_checks.items()}
    return out


# --- structure --------------------------------------------------------------

def structure_text(decomp, problems=()):
    lines = [f"structure at {decomp.point}: ell = {decomp.ell}, m - ell = {decomp.m2}"]
    for i, (bp, bdp) in enumerate(zip(decomp.basis_prime, decomp.basis_dblprime), 1):
        lines.append(f"  G'_{i} = span {matrix_text(bp)}")
        lines.append(f"  G''_{i} = span {matrix_text(bdp)}")
    for i, (X, Y) in enumerate(zip(decomp.gp_fwd, decomp.gdp_bwd), 1):
        lines.append(f"  (g_{i})' = {matrix_text(X)}")
        lines.append(f"  (g^{i})'' = {matrix_text(Y)}")
    for p in problems:
        lines.append(f"  identity failed: {p}")
    lines.append("decomposition: OK" if not problems else "decomposition: INCONSISTENT")
    return "\n".join(lines)


def structure_json(decomp, problems=()):
    return {
        'command': 'structure',
        'point': str(decomp.point),
        'ell': decomp.ell,
        'm2': decomp.m2,
        'basis_prime': [matrix_json(b) for b in decomp.basis_prime],
        'basis_dblprime': [matrix_json(b) for b in decomp.basis_dblprime],
        'gp_fwd': [matrix_json(X) for X in decomp.gp_fwd],
        'gdp_bwd': [matrix_json(Y) for Y in decomp.gdp_bwd],
        'problems': list(problems),
        'ok': not problems,
    }


def structure_failure_json(point, exc):
    return {'command': 'structure', 'point': str(point), 'ok': False,
            'error': {'code': exc.code, 'kind': exc.__class__.__name__, 'message': str(exc)}}


def dump_json(payload, timestamp=None):
    doc = {'format_version': FORMAT_VERSION}
    if timestamp is not None:
        doc['generated_at'] = timestamp
    doc.update(payload)
    return json.dumps(doc, indent=2)

