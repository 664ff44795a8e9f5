from .errors import ParseError

_NAMES = {
    'LBRACE': "'{'", 'RBRACE': "'}'", 'LBRACKET': "'['", 'RBRACKET': "']'",
    'COLON': "':'", 'COMMA': "','", 'STRING': "string", 'NUMBER': "integer", 'EOF': "end of file",
}


class Parser:
    """Recursive-descent reader for the JSON-like chain file syntax.

    Nodes are tuples whose last element is the (line, column) location:
      ('object', [(key, node, key_loc), ...], loc)
      ('array', [node, ...], loc)
      ('string', text, loc)   ('number', int, loc)
      ('bool', value, loc)    ('null', None, loc)
    """

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def consume(self, expected_type=None):
        tok = self.tokens[self.pos]
        if expected_type and tok.type != expected_type:
            raise ParseError(f"Expected {_NAMES.get(expected_type, expected_type)}, "
                             f"got {_NAMES.get(tok.type, repr(tok.value))}",
                             loc=(tok.line, tok.column))
        self.pos += 1
        return tok

    def _loc(self):
        """Get current location (line, column) from current token."""
        tok = self.peek()
        return (tok.line, tok.column)

    def parse_document(self):
        node = self.parse_value()
        if self.peek().type != 'EOF':
            raise ParseError("trailing content after the top-level object", loc=self._loc())
        return node

    def parse_value(self):
        tok = self.peek()
        loc = self._loc()
        if tok.type == 'LBRACE':
            return self.parse_object()
        if tok.type == 'LBRACKET':
            return self.parse_array()
        if tok.type == 'STRING':
            return ('string', self.consume().value, loc)
        if tok.type == 'NUMBER':
            return ('number', self.consume().value, loc)
        if tok.type in ('TRUE', 'FALSE'):
            return ('bool', self.consume().type == 'TRUE', loc)
        if tok.type == 'NULL':
            self.consume()
            return ('null', None, loc)
        raise ParseError(f"Expected a value, got {_NAMES.get(tok.type, repr(tok.value))}", loc=loc)

    def parse_object(self):
        loc = self._loc()
        self.consume('LBRACE')
        members = []
        seen = set()
        if self.peek().type != 'RBRACE':
            while True:
                key_loc = self._loc()
                key = self.consume('STRING').value
                if key in seen:
                    raise ParseError(f"duplicate field {key!r}", loc=key_loc, field=key)
                seen.add(key)
                self.consume('COLON')
                members.append((key, self.parse_value(), key_loc))
                if self.peek().type != 'COMMA':
                    break
                self.consume('COMMA')
        self.consume('RBRACE')
        return ('object', members, loc)

    def parse_array(self):
        loc = self._loc()
        self.consume('LBRACKET')
        items = []
        if self.peek().type != 'RBRACKET':
            while True:
                items.append(self.parse_value())
                if self.peek().type != 'COMMA':
                    break
                self.consume('COMMA')
        self.consume('RBRACKET')
        return ('array', items, loc)
