"""Parser and printer for the group-expression mini-language.

Grammar (whitespace allowed between any two tokens)::

    expr := term (sep term)*
    term := atom | '(' expr ')'
    atom := ('D' | 'd') uint | ('Z' | 'z' | 'C' | 'c') uint
    sep  := 'x' | 'X' | '×'

Products fold to the left.  Error offsets are byte offsets into the UTF-8
encoding of the input.
"""

from __future__ import annotations

from .errors import DomainError, ExprSyntaxError
from .groups import Cyclic, Dihedral, GroupExpr, Product

_DIHEDRAL = "Dd"
_CYCLIC = "ZzCc"
_SEP = "xX×"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self, pos=None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def fail(self, expected):
        raise ExprSyntaxError(self.offset(), expected, self.peek())

    def parse(self) -> GroupExpr:
        expr = self.expr()
        if self.peek() is not None:
            self.fail("'x' or end of input")
        return expr

    def expr(self) -> GroupExpr:
        node = self.term()
        while self.peek() is not None and self.peek() in _SEP:
            self.pos += 1
            node = Product(node, self.term())
        return node

    def term(self) -> GroupExpr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                self.fail("')'")
            self.pos += 1
            return node
        if ch is not None and ch in _DIHEDRAL + _CYCLIC:
            start = self.pos
            self.pos += 1
            n = self.uint()
            if ch in _DIHEDRAL:
                if n < 3:
                    raise DomainError(f"dihedral group D{n} needs n >= 3", self.offset(start))
                return Dihedral(n)
            if n < 1:
                raise DomainError(f"cyclic group Z{n} needs n >= 1", self.offset(start))
            return Cyclic(n)
        self.fail("group atom (D<n>, Z<n>, C<n>) or '('")

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        # str.isdigit accepts non-ASCII digits; the grammar does not
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if self.pos == start:
            self.fail("unsigned integer")
        if self.pos - start > 1000:
            raise DomainError("integer literal too long", self.offset(start))
        return int(self.text[start:self.pos])


def parse_group_expr(text: str | bytes) -> GroupExpr:
    """Parse ``text`` into a group expression tree.

    Raises :class:`ExprSyntaxError` or :class:`DomainError`; both carry the
    byte offset of the problem.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ExprSyntaxError(exc.start, "valid UTF-8 text") from None
    if not isinstance(text, str):
        raise TypeError(f"expected str or bytes, got {type(text).__name__}")
    return _Parser(text).parse()


def format_group_expr(expr: GroupExpr) -> str:
    """Canonical text form; nested products are parenthesised."""
    if isinstance(expr, Cyclic):
        return f"Z{expr.n}"
    if isinstance(expr, Dihedral):
        return f"D{expr.n}"
    if isinstance(expr, Product):
        parts = []
        for side in (expr.left, expr.right):
            s = format_group_expr(side)
            parts.append(f"({s})" if isinstance(side, Product) else s)
        return " x ".join(parts)
    raise TypeError(f"not a group expression: {expr!r}")
