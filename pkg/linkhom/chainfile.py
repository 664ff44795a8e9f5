"""Reading and writing chain files.

A chain file is one JSON-like object with `//` comments allowed:

    {
      "r": 1, "m": 3, "n": 3,
      "s": ["0", "0", "1"],            // ascending coefficients, or "c"
      "f_fwd": [ [[["0", "1"]]], ... ],
      "f_bwd": [...], "g_fwd": [...], "g_bwd": [...],
      "extra_points": ["1/2"]           // optional
    }

Each family is a list of n-1 matrices, a matrix a list of rows, and an entry
either a rational string (a constant) or a list of rational strings (a
polynomial, lowest degree first). Unknown fields are rejected.
"""
from .arith import POLY, degree, parse_rational, format_rational, poly_coeffs, poly_from_coeffs
from .chain import FAMILIES, build_chain
from .lexer import lex
from .parser import Parser
from .errors import ParseError, ZeroDenominator

REQUIRED = ('r', 'm', 'n', 's') + FAMILIES
OPTIONAL = ('extra_points',)


def _rational(node, path):
    kind, value, loc = node
    if kind != 'string':
        raise ParseError(f"{path}: expected a rational string like \"-3/4\"", loc=loc, field=path)
    try:
        return parse_rational(value)
    except ZeroDenominator:
        raise ParseError(f"{path}: zero denominator in {value!r}", loc=loc, field=path) from None
    except ValueError:
        raise ParseError(f"{path}: {value!r} is not a rational number", loc=loc, field=path) from None


def _poly(node, path):
    kind, value, loc = node
    if kind == 'array':
        return poly_from_coeffs([_rational(c, f"{path}[{k}]") for k, c in enumerate(value)])
    return POLY.convert(_rational(node, path))


def _array(node, path, what):
    kind, value, loc = node
    if kind != 'array':
        raise ParseError(f"{path}: expected {what}", loc=loc, field=path)
    return value


def _matrix(node, path):
    rows = []
    for i, row in enumerate(_array(node, path, "a matrix (list of rows)")):
        entries = _array(row, f"{path}[{i}]", "a matrix row (list of entries)")
        rows.append([_poly(e, f"{path}[{i}][{j}]") for j, e in enumerate(entries)])
    return rows


def _dimension(node, key):
    kind, value, loc = node
    if kind != 'number':
        raise ParseError(f"{key}: expected an integer", loc=loc, field=key)
    return value


def parse_chain_text(text):
    """(chain, extra_points) from chain file contents."""
    root = Parser(lex(text)).parse_document()
    if root[0] != 'object':
        raise ParseError("a chain file holds a single object", loc=root[-1])
    fields = {}
    locs = {}
    for key, node, key_loc in root[1]:
        if key not in REQUIRED and key not in OPTIONAL:
            raise ParseError(f"unknown field {key!r}", loc=key_loc, field=key)
        fields[key] = node
        locs[key] = node[-1]
    for key in REQUIRED:
        if key not in fields:
            raise ParseError(f"missing field {key!r}", loc=root[-1], field=key)
    spec = {key: _dimension(fields[key], key) for key in ('r', 'm', 'n')}
    spec['s'] = _poly(fields['s'], 's')
    for family in FAMILIES:
        mats = []
        for idx, node in enumerate(_array(fields[family], family, "a list of matrices")):
            path = f"{family}[{idx}]"
            locs[path] = node[-1]
            mats.append(_matrix(node, path))
        spec[family] = mats
    extra = []
    if 'extra_points' in fields:
        for k, node in enumerate(_array(fields['extra_points'], 'extra_points', "a list of points")):
            extra.append(_rational(node, f"extra_points[{k}]"))
    return build_chain(spec, locs), extra


def parse_chain_file(path):
    with open(path, 'rb') as f:
        data = f.read()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as e:
        line = data.count(b'\n', 0, e.start) + 1
        column = e.start - (data.rfind(b'\n', 0, e.start) + 1)
        raise ParseError(f"invalid UTF-8 byte 0x{data[e.start]:02x}", loc=(line, column)) from None
    return parse_chain_text(text)


def _entry(p):
    cs = poly_coeffs(p)
    if degree(p) <= 0:
        return '"' + format_rational(cs[0] if cs else 0) + '"'
    return '[' + ', '.join(f'"{format_rational(c)}"' for c in cs) + ']'


def _dump_matrix(M, indent):
    pad = ' ' * indent
    rows = [pad + '  [' + ', '.join(_entry(e) for e in row) + ']' for row in M.to_list()]
    return pad + '[\n' + ',\n'.join(rows) + '\n' + pad + ']'


def dump_chain(chain, extra_points=(), header=None):
    """Canonical chain file text; parse_chain_text reads it back unchanged."""
    out = []
    if header:
        out.extend(f"// {line}" for line in header.splitlines())
    out.append('{')
    out.append(f'  "r": {chain.r},')
    out.append(f'  "m": {chain.m},')
    out.append(f'  "n": {chain.n},')
    out.append(f'  "s": {_entry(chain.s)}')
    for family in FAMILIES:
        out[-1] += ','
        mats = chain.maps(family)
        if not mats:
            out.append(f'  "{family}": []')
            continue
        body = ',\n'.join(_dump_matrix(M, 4) for M in mats)
        out.append(f'  "{family}": [\n{body}\n  ]')
    if extra_points:
        out[-1] += ','
        out.append('  "extra_points": [' + ', '.join(f'"{format_rational(a)}"' for a in extra_points) + ']')
    out.append('}')
    return '\n'.join(out) + '\n'
