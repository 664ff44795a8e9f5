import re

from .errors import ParseError


class Token:
    def __init__(self, type, value, line, column):
        self.type = type
        self.value = value
        self.line = line
        self.column = column

    def __repr__(self):
        return f"Token({self.type}, {repr(self.value)})"


token_specification = [
    ('COMMENT',   r'//[^\n]*'),
    ('STRING',    r'"(?:\\.|[^"\\\n])*"'),
    ('NUMBER',    r'-?\d+'),
    ('TRUE',      r'true\b'),
    ('FALSE',     r'false\b'),
    ('NULL',      r'null\b'),
    ('LBRACE',    r'\{'),
    ('RBRACE',    r'\}'),
    ('LBRACKET',  r'\['),
    ('RBRACKET',  r'\]'),
    ('COLON',     r':'),
    ('COMMA',     r','),
    ('NEWLINE',   r'\n'),
    ('SKIP',      r'[ \t\r]+'),
    ('MISMATCH',  r'.'),
]
tok_regex = re.compile('|'.join('(?P<%s>%s)' % pair for pair in token_specification))

escape_regex = re.compile(r'\\(u[0-9a-fA-F]{4}|.)')
ESCAPES = {'"': '"', '\\': '\\', '/': '/', 'b': '\b', 'f': '\f', 'n': '\n', 'r': '\r', 't': '\t'}


def unescape(body, line, column):
    """JSON string escapes; ``column`` is that of the opening quote."""
    def replace(mo):
        code = mo.group(1)
        if code in ESCAPES:
            return ESCAPES[code]
        if len(code) == 5:
            return chr(int(code[1:], 16))
        raise ParseError(f'invalid escape \\{code} in string', loc=(line, column + 1 + mo.start()))
    return escape_regex.sub(replace, body)


def lex(code):
    """Tokens of a chain file. Columns are 0-based, lines 1-based."""
    line_num = 1
    line_start = 0
    tokens = []
    for mo in tok_regex.finditer(code):
        kind = mo.lastgroup
        value = mo.group()
        column = mo.start() - line_start
        if kind == 'NEWLINE':
            line_start = mo.end()
            line_num += 1
            continue
        elif kind == 'SKIP' or kind == 'COMMENT':
            continue
        elif kind == 'MISMATCH':
            raise ParseError(f'{value!r} unexpected', loc=(line_num, column))
        if kind == 'STRING':
            tokens.append(Token(kind, unescape(value[1:-1], line_num, column), line_num, column))
        elif kind == 'NUMBER':
            tokens.append(Token(kind, int(value), line_num, column))
        else:
            tokens.append(Token(kind, value, line_num, column))
    tokens.append(Token('EOF', None, line_num, len(code) - line_start))
    return tokens
