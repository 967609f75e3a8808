"""Text and JSON forms of monomials, bags, trees, forests and their combinations.

Grammar (whitespace is insignificant)::

    expr     := '0' | ['+'|'-'] term (('+'|'-') term)*
    term     := [rational ['*']] key ('⊗' key)*
    rational := int | int '/' int
    monomial := '1' | factor+          factor := 'x{' [dec ','] int '}' ['^' int]
    bag      := '1' | monomial ('(.)' monomial)*
    tree     := dec ['[' [tree (',' tree)*] ']']
    forest   := '1' | tree (['·'] tree)*

The decoration inside ``x{...}`` is omitted exactly when the alphabet has a
single letter. ``(x)`` is accepted as an ASCII spelling of ``⊗``.
"""
import json
import re
from fractions import Fraction

from hopfmi.errors import AlphabetError, ParseError, SortError, WeightError
from hopfmi.forests import Forest, Tree
from hopfmi.linear import LinComb, accumulate
from hopfmi.multiindex import MonomialBag, MultiIndex

SORTS = ("multiindex", "bag", "tree", "forest")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<factor>x\{\s*(?:(?P<fdec>[A-Za-z_]\w*)\s*,\s*)?(?P<slot>-?\d+)\s*\}(?:\s*\^\s*(?P<exp>\d+))?)
  | (?P<odot>\(\.\))
  | (?P<tensor>⊗|\(x\))
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_]\w*)
  | (?P<punct>[\[\],/*+·-]|−)
    """,
    re.VERBOSE,
)


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        if kind in ("fdec", "slot", "exp"):
            kind = "factor"
        if m.group("factor") is not None:
            kind = "factor"
        if kind != "ws":
            value = m.group(0)
            if kind == "factor":
                value = (m.group("fdec"), int(m.group("slot")), int(m.group("exp") or 1))
            elif kind == "punct" and value == "−":
                value = "-"
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, sort, alphabet):
        if sort not in SORTS:
            raise SortError(f"unknown sort {sort!r}")
        self.text = text
        self.sort = sort
        self.alphabet = tuple(alphabet) if alphabet is not None else None
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers ------------------------------------------------------------
    def peek(self, offset=0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def accept(self, kind, value=None):
        tok = self.peek()
        if tok[0] == kind and (value is None or tok[1] == value):
            self.i += 1
            return tok
        return None

    def expect(self, kind, value=None):
        tok = self.accept(kind, value)
        if tok is None:
            want = value if value is not None else kind
            raise self.error(f"expected {want!r}")
        return tok

    def decoration(self, name, tok):
        if self.alphabet is None:
            return name
        if name is None:
            if len(self.alphabet) != 1:
                raise AlphabetError(
                    f"decoration required in x{{...}} at position {tok[2]} "
                    f"for alphabet {','.join(self.alphabet)}"
                )
            return self.alphabet[0]
        if name not in self.alphabet:
            raise AlphabetError(f"decoration {name!r} at position {tok[2]} not in alphabet")
        return name

    # -- grammar --------------------------------------------------------------------
    def key_starts(self, tok):
        kind = tok[0]
        if kind == "num":
            return tok[1] == "1"
        if self.sort in ("multiindex", "bag"):
            if kind == "ident":
                raise SortError(f"tree syntax in a {self.sort} expression at position {tok[2]}")
            return kind == "factor"
        if kind == "factor":
            raise SortError(f"multi-index syntax in a {self.sort} expression at position {tok[2]}")
        return kind == "ident"

    def expression(self):
        if self.peek()[0] == "num" and self.peek()[1] == "0" and self.peek(1)[0] == "end":
            self.next()
            return LinComb.zero()
        acc = {}
        sign = 1
        if self.accept("punct", "-"):
            sign = -1
        else:
            self.accept("punct", "+")
        while True:
            coeff, key = self.term()
            accumulate(acc, key, sign * coeff)
            if self.accept("punct", "+"):
                sign = 1
            elif self.accept("punct", "-"):
                sign = -1
            elif self.peek()[0] == "end":
                break
            else:
                raise self.error("expected '+', '-' or end of input")
        return LinComb.from_accumulator(acc)

    def term(self):
        coeff = Fraction(1)
        tok = self.peek()
        if tok[0] == "num":
            nxt = self.peek(1)
            is_coeff = nxt[1] in ("/", "*") or (nxt[0] != "end" and self.key_starts(nxt))
            if is_coeff:
                self.next()
                num = int(tok[1])
                den = 1
                if self.accept("punct", "/"):
                    den = int(self.expect("num")[1])
                    if den == 0:
                        raise self.error("zero denominator", tok)
                self.accept("punct", "*")
                coeff = Fraction(num, den)
        legs = [self.key()]
        while self.accept("tensor"):
            legs.append(self.key())
        return coeff, legs[0] if len(legs) == 1 else tuple(legs)

    def key(self):
        tok = self.peek()
        if tok[0] == "num":
            if tok[1] != "1":
                raise self.error("only '1' may stand for a basis element")
            self.next()
            if self.sort == "tree":
                raise SortError(f"the unit is not a tree (position {tok[2]})")
            return {"multiindex": MultiIndex(), "bag": MonomialBag(), "forest": Forest()}[self.sort]
        if not self.key_starts(tok):
            raise self.error(f"expected a {self.sort}")
        if self.sort == "multiindex":
            return self.monomial()
        if self.sort == "bag":
            factors = [self.monomial()]
            while self.accept("odot"):
                factors.append(self.monomial())
            for f in factors:
                if f.weight != -1:
                    raise WeightError(f"bag factor {f} has weight {f.weight}, expected -1")
            return MonomialBag(factors)
        if self.sort == "tree":
            return self.tree()
        trees = [self.tree()]
        while True:
            if self.accept("punct", "·"):
                trees.append(self.tree())
            elif self.peek()[0] == "ident":
                trees.append(self.tree())
            else:
                break
        return Forest(trees)

    def monomial(self):
        counts = {}
        tok = self.expect("factor")
        while tok is not None:
            dec, slot, exp = tok[1]
            if slot < -1:
                raise ParseError("slot below -1", self.text, tok[2])
            key = (self.decoration(dec, tok), slot)
            counts[key] = counts.get(key, 0) + exp
            tok = self.accept("factor")
        return MultiIndex(counts)

    def tree(self):
        tok = self.expect("ident")
        dec = tok[1]
        if self.alphabet is not None and dec not in self.alphabet:
            raise AlphabetError(f"decoration {dec!r} at position {tok[2]} not in alphabet")
        children = []
        if self.accept("punct", "["):
            if not self.accept("punct", "]"):
                children.append(self.tree())
                while self.accept("punct", ","):
                    children.append(self.tree())
                self.expect("punct", "]")
        return Tree(dec, children)


def parse(text, sort, alphabet=("a",)):
    """Parse a rational combination of basis elements of the given sort."""
    p = _Parser(text, sort, alphabet)
    return p.expression()


def parse_key(text, sort, alphabet=("a",)):
    """Parse a single basis element (no coefficient)."""
    p = _Parser(text, sort, alphabet)
    key = p.key()
    if p.peek()[0] != "end":
        raise p.error("trailing input")
    return key


def parse_multiindex_any(text):
    return parse_key(text, "multiindex", None)


def parse_tree_any(text):
    return parse_key(text, "tree", None)


def infer_sort(text):
    """``bag`` if the text contains a ``x{...}`` factor, else ``forest``."""
    return "bag" if "x{" in text.replace(" ", "") else "forest"


# -- output ---------------------------------------------------------------------------


def format_key(key, show_decoration=False):
    if isinstance(key, tuple) and not isinstance(key, (MonomialBag, Forest)):
        return " ⊗ ".join(format_key(k, show_decoration) for k in key)
    if isinstance(key, (MultiIndex, MonomialBag)):
        return key.to_text(show_decoration)
    return key.to_text()


def format_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_lincomb(x, show_decoration=False):
    if not x:
        return "0"
    parts = []
    for i, (key, c) in enumerate(x.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_key(key, show_decoration)
        if mag != 1:
            sep = "*" if body.startswith("1") else " "
            body = f"{format_rational(mag)}{sep}{body}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def to_json_doc(x, sort, alphabet):
    show = len(alphabet) > 1
    rank = None
    terms = []
    for key, c in x.items():
        legs = list(key) if _is_tensor_key(key) else [key]
        rank = len(legs)
        entry = {"coeff": format_rational(c)}
        if rank <= 2:
            entry["key"] = format_key(legs[0], show)
            if rank == 2:
                entry["right"] = format_key(legs[1], show)
        else:
            entry["legs"] = [format_key(k, show) for k in legs]
        terms.append(entry)
    return {"sort": sort, "rank": rank or 1, "alphabet": list(alphabet), "terms": terms}


def _is_tensor_key(key):
    return isinstance(key, tuple) and not isinstance(key, (MonomialBag, Forest))


def from_json_doc(doc):
    sort = doc["sort"]
    alphabet = tuple(doc.get("alphabet") or ("a",))
    rank = doc.get("rank", 1)
    acc = {}
    for entry in doc["terms"]:
        if "legs" in entry:
            legs = entry["legs"]
        elif "right" in entry:
            legs = [entry["key"], entry["right"]]
        else:
            legs = [entry["key"]]
        keys = tuple(parse_key(s, sort, alphabet) for s in legs)
        c = Fraction(entry["coeff"])
        accumulate(acc, keys if rank > 1 else keys[0], c)
    return LinComb.from_accumulator(acc)


def dumps(x, sort, alphabet, fmt="text"):
    if fmt == "json":
        return json.dumps(to_json_doc(x, sort, alphabet), ensure_ascii=False)
    return format_lincomb(x, show_decoration=len(alphabet) > 1)
