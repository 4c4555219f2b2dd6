"""CoNLL-U ingestion: tokens, dependency trees, parsing and serialization.

Multiword-token ranges (``1-2``) and empty nodes (``1.1``) are skipped;
only the plain word lines become tokens.
"""

from dataclasses import dataclass, field


class ConlluParseError(ValueError):
    """Malformed CoNLL-U input; carries the 1-based line number."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class TreeStructureError(ValueError):
    """A sentence block does not form a single-rooted tree."""

    def __init__(self, sentence_id, message):
        super().__init__(f"sentence {sentence_id}: {message}")
        self.sentence_id = sentence_id


@dataclass(frozen=True)
class Token:
    index: int          # 1-based position in the sentence
    surface: str
    lemma: str
    upos: str
    head: int           # 0 = root
    deprel: str
    feats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ValueError(f"token head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ValueError(f"token {self.index} is its own head")


@dataclass(frozen=True)
class DependencyTree:
    sentence_id: str
    text: str
    tokens: tuple

    def __post_init__(self):
        _check_tree_shape(self.sentence_id, self.tokens)

    def token(self, index):
        return self.tokens[index - 1]

    @property
    def root(self):
        for tok in self.tokens:
            if tok.head == 0:
                return tok
        raise TreeStructureError(self.sentence_id, "no root token")

    def children(self, index):
        """Dependents of the token at ``index``, in sentence order."""
        return [t for t in self.tokens if t.head == index]

    def children_by_rel(self, index, *deprels):
        return [t for t in self.tokens if t.head == index and t.deprel in deprels]

    def subtree_indices(self, index):
        """All token indices in the subtree rooted at ``index`` (inclusive)."""
        out = [index]
        stack = [index]
        while stack:
            cur = stack.pop()
            for t in self.tokens:
                if t.head == cur:
                    out.append(t.index)
                    stack.append(t.index)
        return sorted(out)

    def with_tokens(self, tokens):
        return DependencyTree(self.sentence_id, self.text, tuple(tokens))


def _check_tree_shape(sentence_id, tokens):
    n = len(tokens)
    if n == 0:
        raise TreeStructureError(sentence_id, "empty sentence")
    roots = [t.index for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise TreeStructureError(
            sentence_id, f"expected exactly one root, found {len(roots)}")
    for t in tokens:
        if t.head > n:
            raise TreeStructureError(
                sentence_id, f"token {t.index} has head {t.head} out of range")
        if t.index != tokens[t.index - 1].index:
            raise TreeStructureError(sentence_id, "token indices not contiguous")
    # every token must reach the root without cycles
    for t in tokens:
        seen = set()
        cur = t.index
        while cur != 0:
            if cur in seen:
                raise TreeStructureError(
                    sentence_id, f"cycle through token {cur}")
            seen.add(cur)
            cur = tokens[cur - 1].head


def parse_feats(s):
    if not s or s == "_":
        return {}
    out = {}
    for pair in s.split("|"):
        if "=" in pair:
            k, v = pair.split("=", 1)
            out[k] = v
    return out


def _format_feats(feats):
    if not feats:
        return "_"
    return "|".join(f"{k}={v}" for k, v in sorted(feats.items()))


def parse_conllu(source):
    """Parse CoNLL-U text (str, bytes, or file object) into DependencyTrees.

    sentence_id is taken from a ``# sent_id`` comment when present, falling
    back to the 1-based ordinal of the sentence in the input.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")

    trees = []
    block = []          # (line_no, line) pairs
    comments = {}
    ordinal = 0

    def flush(line_no):
        nonlocal block, comments, ordinal
        if not block:
            comments = {}
            return
        ordinal += 1
        sid = comments.get("sent_id", str(ordinal))
        tokens = [_parse_token_line(no, ln) for no, ln in block]
        tokens = [t for t in tokens if t is not None]
        if not tokens:
            raise ConlluParseError(line_no, f"sentence {sid} has no word lines")
        text = comments.get("text") or detokenize([t.surface for t in tokens])
        trees.append(DependencyTree(sid, text, tuple(tokens)))
        block = []
        comments = {}

    line_no = 0
    for line_no, raw in enumerate(source.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            flush(line_no)
        elif line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                comments[key.strip()] = value.strip()
        else:
            block.append((line_no, line))
    flush(line_no)
    return trees


def _parse_token_line(line_no, line):
    cols = line.split("\t")
    if len(cols) != 10:
        raise ConlluParseError(
            line_no, f"expected 10 tab-separated columns, got {len(cols)}")
    tok_id = cols[0]
    if "-" in tok_id or "." in tok_id:
        return None     # multiword-token range or empty node
    try:
        index = int(tok_id)
    except ValueError:
        raise ConlluParseError(line_no, f"non-integer token id {tok_id!r}") from None
    try:
        head = int(cols[6])
    except ValueError:
        raise ConlluParseError(line_no, f"non-integer head {cols[6]!r}") from None
    surface = cols[1]
    lemma = cols[2] if cols[2] != "_" else surface.lower()
    try:
        return Token(index=index, surface=surface, lemma=lemma, upos=cols[3],
                     head=head, deprel=cols[7], feats=parse_feats(cols[5]))
    except ValueError as exc:
        raise ConlluParseError(line_no, str(exc)) from None


def to_conllu(trees):
    """Serialize trees back to CoNLL-U text (the columns this tool reads)."""
    chunks = []
    for tree in trees:
        lines = [f"# sent_id = {tree.sentence_id}", f"# text = {tree.text}"]
        for t in tree.tokens:
            lines.append("\t".join([
                str(t.index), t.surface, t.lemma, t.upos, "_",
                _format_feats(t.feats), str(t.head), t.deprel, "_", "_",
            ]))
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


_NO_SPACE_BEFORE = {",", ".", ";", ":", "!", "?", ")", "]", "}", "%",
                    "'s", "n't", "'re", "'ve", "'ll", "'d", "'m", "'"}
_NO_SPACE_AFTER = {"(", "[", "{"}


def detokenize(words):
    """Join tokens into readable text (no space before closing punctuation)."""
    out = []
    for w in words:
        if out and w not in _NO_SPACE_BEFORE and out[-1] not in _NO_SPACE_AFTER:
            out.append(" ")
        out.append(w)
    return "".join(out)
