"""A small text format for multilinear identities.

One identity per line, optionally prefixed by ``name:``.  Monomials are
written functionally: ``M(x,y)`` for the single operation, ``L(x,y)`` for
``x⊣y``, ``R(x,y)`` for ``x⊢y`` and ``T(x,y,z)`` for the trilinear
operation; variables are single letters ``a``..``z``.  Terms carry optional
integer coefficients::

    rac: M(a,M(b,c)) + M(a,M(c,b))
    L(L(a,b),c) - L(a,L(b,c))

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .monomials import LEFT, LETTERS, RIGHT, SINGLE, TRI, Polynomial, leaves

_ARITY = {SINGLE: 2, LEFT: 2, RIGHT: 2, TRI: 3}

SIGNATURES = {
    "single": frozenset({SINGLE}),
    "dialgebra": frozenset({LEFT, RIGHT}),
    "trilinear": frozenset({TRI}),
}


class DSLError(ValueError):
    """Syntax or validity error, with a 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class IdentityDocument:
    identities: list[tuple[str, Polynomial]] = field(default_factory=list)
    signature: str | None = None

    def __len__(self) -> int:
        return len(self.identities)

    def __iter__(self):
        return iter(self.identities)

    @property
    def polynomials(self) -> list[Polynomial]:
        return [p for _, p in self.identities]

    def render(self) -> str:
        return "\n".join(f"{name}: {p.to_dsl()}" for name, p in self.identities) + "\n"

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdentityDocument):
            return NotImplemented
        return self.signature == other.signature and self.identities == other.identities


class _Parser:
    def __init__(self, text: str, lineno: int, offset: int):
        self.s = text
        self.i = 0
        self.lineno = lineno
        self.offset = offset

    def error(self, msg, at=None):
        col = (self.i if at is None else at) + 1 + self.offset
        raise DSLError(msg, self.lineno, col)

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}" + (f", found {self.peek()!r}" if self.peek() else " at end of line"))
        self.i += 1

    def integer(self):
        self.skip()
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        return int(self.s[j : self.i]) if self.i > j else None

    def monomial(self):
        ch = self.peek()
        start = self.i
        if ch in _ARITY:
            self.i += 1
            if self.peek() != "(":
                if ch.lower() in LETTERS:
                    self.error(f"variables are lower-case letters; {ch!r} is an operation", start)
                self.error("expected '('")
            self.i += 1
            kids = [self.monomial()[0]]
            for _ in range(_ARITY[ch] - 1):
                self.expect(",")
                kids.append(self.monomial()[0])
            if self.peek() == ",":
                self.error(f"{ch} takes {_ARITY[ch]} arguments")
            self.expect(")")
            return (ch,) + tuple(kids), start
        if ch and ch in LETTERS:
            self.i += 1
            return LETTERS.index(ch) + 1, start
        if not ch:
            self.error("unexpected end of line")
        self.error(f"unexpected character {ch!r}")

    def polynomial(self):
        terms: dict = {}
        first = True
        while True:
            sign = 1
            ch = self.peek()
            if ch in "+-":
                sign = -1 if ch == "-" else 1
                self.i += 1
            elif not first:
                if not ch:
                    break
                self.error(f"expected '+' or '-', found {ch!r}")
            coef = self.integer()
            if coef is not None and self.peek() == "*":
                self.i += 1
            c = sign * (1 if coef is None else coef)
            m, at = self.monomial()
            word = leaves(m)
            if len(set(word)) != len(word):
                self.error("repeated variable in a monomial", at)
            terms[m] = terms.get(m, 0) + c
            first = False
            if not self.peek():
                break
        return Polynomial(terms)


def _ops(m) -> set:
    if isinstance(m, int):
        return set()
    out = {m[0]}
    for c in m[1:]:
        out |= _ops(c)
    return out


def _signature_of(ops: set) -> str | None:
    if not ops:
        return None
    for name, sig in SIGNATURES.items():
        if ops <= sig:
            return name
    return "mixed"


def parse_polynomial(text: str, lineno: int = 1, offset: int = 0) -> Polynomial:
    p = _Parser(text, lineno, offset)
    if not p.peek():
        p.error("empty identity")
    return p.polynomial()


def parse_identities(text: str) -> IdentityDocument:
    """Parse and validate a document; raises :class:`DSLError` on problems."""
    doc = IdentityDocument()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        offset = 0
        name = f"id{len(doc.identities) + 1}"
        if ":" in line:
            head, rest = line.split(":", 1)
            if not head.strip() or not head.strip().replace("_", "").replace("-", "").isalnum():
                raise DSLError("bad identity name", lineno, 1)
            name = head.strip()
            offset = len(head) + 1
            line = rest
        poly = parse_polynomial(line, lineno, offset)
        col = offset + len(line) - len(line.lstrip()) + 1
        if poly.is_zero():
            raise DSLError("identity is zero", lineno, col)
        ops = set().union(*(_ops(m) for m in poly.monomials())) if len(poly) else set()
        sig = _signature_of(ops)
        if sig == "mixed":
            raise DSLError("mixed operation signatures in one identity", lineno, col)
        degrees = {len(leaves(m)) for m in poly.monomials()}
        if len(degrees) != 1:
            raise DSLError("monomials of different degrees", lineno, col)
        words = {tuple(sorted(leaves(m))) for m in poly.monomials()}
        n = degrees.pop()
        if words != {tuple(range(1, n + 1))}:
            raise DSLError(f"not multilinear in the variables {LETTERS[:n]}", lineno, col)
        if sig is not None:
            if doc.signature is None:
                doc.signature = sig
            elif doc.signature != sig:
                raise DSLError(f"signature {sig} differs from {doc.signature}", lineno, col)
        doc.identities.append((name, poly))
    return doc


def render_document(doc: IdentityDocument) -> str:
    return doc.render()
