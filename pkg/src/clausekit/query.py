"""Syntactic queries over C-O Diagram models.

Clause-level predicates combine through boolean operators under one of
three quantifiers.  Surface syntax is s-expressions:

    query      = "(" quantifier predicate ")"
    quantifier = "exists" | "forall" | "select"
    predicate  = "(" name arg* ")"
               | "(" "not" predicate ")"
               | "(" ("and" | "or") predicate predicate+ ")"
    arg        = '"' characters '"'

Atoms: isObl, isPerm, isForb (false on refined boxes), isLeaf,
isRefined [connective], agentIs <name>, verbIs <verb>, hasReparation,
hasTimeRestriction, hasGuard, nameIs <name>.  exists/forall evaluate to a
boolean over all boxes of the diagram; select returns the names of the
satisfying boxes in document order.
"""

from dataclasses import dataclass

from .diagram import Leaf, Refined

# atom name -> (min args, max args)
ATOMS = {
    "isObl": (0, 0),
    "isPerm": (0, 0),
    "isForb": (0, 0),
    "isLeaf": (0, 0),
    "isRefined": (0, 1),
    "agentIs": (1, 1),
    "verbIs": (1, 1),
    "hasReparation": (0, 0),
    "hasTimeRestriction": (0, 0),
    "hasGuard": (0, 0),
    "nameIs": (1, 1),
}

QUANTIFIERS = ("exists", "forall", "select")


class QuerySyntaxError(ValueError):
    def __init__(self, position, message):
        super().__init__(f"position {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class Atom:
    name: str
    arg: str | None = None


@dataclass(frozen=True)
class Not:
    inner: object


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Query:
    quantifier: str     # exists | forall | select
    predicate: object


# ---------------------------------------------------------------------------
# parsing

def _tokenize(text):
    tokens = []     # (position, kind, value)
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((i, c, c))
            i += 1
        elif c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise QuerySyntaxError(i, "unterminated string literal")
            tokens.append((i, "string", text[i + 1:j]))
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '()"':
                j += 1
            tokens.append((i, "symbol", text[i:j]))
            i = j
    return tokens


def _parse_sexpr(tokens, at):
    if at >= len(tokens):
        raise QuerySyntaxError(tokens[-1][0] if tokens else 0,
                               "unexpected end of input")
    pos, kind, value = tokens[at]
    if kind != "(":
        raise QuerySyntaxError(pos, f"expected '(', got {value!r}")
    at += 1
    if at >= len(tokens) or tokens[at][1] != "symbol":
        raise QuerySyntaxError(tokens[min(at, len(tokens) - 1)][0],
                               "expected an operator or atom name")
    head_pos, _, head = tokens[at]
    at += 1
    items = []
    while at < len(tokens) and tokens[at][1] != ")":
        pos2, kind2, value2 = tokens[at]
        if kind2 == "(":
            node, at = _parse_sexpr(tokens, at)
            items.append(("expr", node, pos2))
        else:
            items.append((kind2, value2, pos2))
            at += 1
    if at >= len(tokens):
        raise QuerySyntaxError(pos, "missing closing ')'")
    at += 1     # consume ')'
    return _build(head, head_pos, items), at


def _build(head, head_pos, items):
    if head == "not":
        if len(items) != 1 or items[0][0] != "expr":
            raise QuerySyntaxError(head_pos, "not takes exactly one predicate")
        return Not(items[0][1])
    if head in ("and", "or"):
        if len(items) < 2 or any(kind != "expr" for kind, _, _ in items):
            raise QuerySyntaxError(head_pos,
                                   f"{head} takes two or more predicates")
        parts = tuple(node for _, node, _ in items)
        return And(parts) if head == "and" else Or(parts)
    if head in QUANTIFIERS:
        if len(items) != 1 or items[0][0] != "expr":
            raise QuerySyntaxError(head_pos,
                                   f"{head} takes exactly one predicate")
        return Query(head, items[0][1])
    if head not in ATOMS:
        raise QuerySyntaxError(head_pos, f"unknown atom {head!r}")
    lo, hi = ATOMS[head]
    args = []
    for kind, value, pos in items:
        if kind == "expr":
            raise QuerySyntaxError(pos, f"{head} takes no sub-predicates")
        args.append(value)
    if not (lo <= len(args) <= hi):
        raise QuerySyntaxError(head_pos,
                               f"{head} takes {lo} to {hi} argument(s), got {len(args)}")
    return Atom(head, args[0] if args else None)


def parse_query(text):
    """Parse the surface syntax; the root must be a quantifier."""
    tokens = _tokenize(text)
    if not tokens:
        raise QuerySyntaxError(0, "empty query")
    node, at = _parse_sexpr(tokens, 0)
    if at != len(tokens):
        raise QuerySyntaxError(tokens[at][0], "trailing input after query")
    if not isinstance(node, Query):
        raise QuerySyntaxError(0, "query root must be exists, forall or select")
    _check_no_nested_quantifier(node.predicate)
    return node


def _check_no_nested_quantifier(node):
    if isinstance(node, Query):
        raise QuerySyntaxError(0, "quantifiers cannot nest inside predicates")
    if isinstance(node, Not):
        _check_no_nested_quantifier(node.inner)
    elif isinstance(node, (And, Or)):
        for part in node.parts:
            _check_no_nested_quantifier(part)


# ---------------------------------------------------------------------------
# evaluation

def _eval_atom(atom, box):
    content = box.content
    leaf = isinstance(content, Leaf)
    name = atom.name
    if name == "isObl":
        return leaf and content.modality == "O"
    if name == "isPerm":
        return leaf and content.modality == "P"
    if name == "isForb":
        return leaf and content.modality == "F"
    if name == "isLeaf":
        return leaf
    if name == "isRefined":
        return isinstance(content, Refined) and \
            (atom.arg is None or content.connective == atom.arg)
    if name == "agentIs":
        return box.agent == atom.arg
    if name == "verbIs":
        return leaf and content.verb == atom.arg
    if name == "hasReparation":
        return box.reparation is not None
    if name == "hasTimeRestriction":
        return len(box.time_restriction) > 0
    if name == "hasGuard":
        return len(box.guard) > 0
    if name == "nameIs":
        return box.name == atom.arg
    raise ValueError(f"unknown atom {name!r}")


def _eval_predicate(node, box):
    if isinstance(node, Atom):
        return _eval_atom(node, box)
    if isinstance(node, Not):
        return not _eval_predicate(node.inner, box)
    if isinstance(node, And):
        return all(_eval_predicate(p, box) for p in node.parts)
    if isinstance(node, Or):
        return any(_eval_predicate(p, box) for p in node.parts)
    raise ValueError(f"unexpected node {node!r}")


def eval_query(query, diagram):
    """Boolean for exists/forall; list of box names for select."""
    if not isinstance(query, Query):
        raise ValueError("query root must be exists, forall or select")
    boxes = diagram.boxes()
    if query.quantifier == "exists":
        return any(_eval_predicate(query.predicate, b) for b in boxes)
    if query.quantifier == "forall":
        return all(_eval_predicate(query.predicate, b) for b in boxes)
    return [b.name for b in boxes if _eval_predicate(query.predicate, b)]
