"""Clause extraction: deterministic rules plus toggleable heuristics.

One dependency tree goes in, zero or more clause rows come out.  The rule
layer populates Subject/Verb/Object from nsubj/dobj style relations, reads
modality off "may"/"must", converts agentful passives to active voice, and
routes NP-attached material to Notes and verb-attached material to
Adverbials.  The heuristic layer widens the modal keyword list, reroutes
temporal/conditional phrases to Time/Conditions, repairs PP attachment,
discards filler adverbs, extracts numeric conditions, falls back to
prepositional objects, and rewrites anaphoric pronouns.

Coordination of subjects, verbs, objects, or main clauses yields one row
per conjunct combination; every row after the first carries the joining
connective (AND/OR/SEQ).
"""

from dataclasses import dataclass, field

from .config import RULE_LAYER_MODALS
from .conllu import detokenize
from .table import ClauseRow

_MODALITY_RANK = {"D": 0, "P": 1, "O": 2, "F": 3}

# Syntactic main clauses that merely introduce the semantic main clause
# ("User understands that ...").  With heuristics on, extraction recurses
# into the complement and the introduction lands in Notes.
INTRO_PREDICATES = ("understand", "agree", "acknowledge", "mean")

_AUX_RELS = ("aux", "auxpass", "cop")
_NP_NOTE_RELS = ("rcmod", "vmod", "appos", "advcl", "parataxis", "dep", "acl")
_VERB_NOTE_RELS = ("parataxis", "ccomp", "xcomp", "dep", "appos", "rcmod", "acl")
_BRACKETS = {"(", ")", "[", "]", "{", "}"}


@dataclass
class Frame:
    """One predicate candidate: a verb slot with its dependents."""

    tree: object
    verb: object                    # Token of the predicate head
    connective: str | None = None   # None on the first frame of a sentence
    subject: object = None          # Token, after voice conversion
    obj: object = None
    iobj: object = None
    aux: list = field(default_factory=list)
    neg: bool = False
    passive: bool = False
    agent: object = None
    passive_subject: object = None
    modifiers: list = field(default_factory=list)   # verb-attached dependents
    subject_exclude: set = field(default_factory=set)
    object_exclude: set = field(default_factory=set)
    verb_prefix: str = ""           # "[is] " for copular/agentless-passive
    verb_fold: str = ""             # " [to]" for folded prepositions
    verb_surface: bool = False      # render participle surface, not lemma


def extract_clauses(tree, config):
    """All clause rows for one sentence, in reading order."""
    predicate, intro_note = _main_predicate(tree, config)
    if predicate is None:
        return [_incomplete_row(tree)]

    rows = []
    frames = split_coordinations(tree, predicate, config)
    for frame in frames:
        convert_passive(frame)
        for sub_frame in _split_np_slots(frame, config):
            rows.extend(_finish_frame(sub_frame, config))
    if rows and intro_note:
        rows[0] = _with_extra_notes(rows[0], [("V", intro_note)])
    return rows


def _main_predicate(tree, config):
    root = tree.root
    intro_note = None
    predicate = root
    if config.heuristics_enabled and root.lemma.lower() in INTRO_PREDICATES:
        ccomps = tree.children_by_rel(root.index, "ccomp")
        if ccomps:
            predicate = ccomps[0]
            intro_note = _intro_text(tree, root, predicate)
    if _is_predicate(tree, predicate):
        return predicate, intro_note
    return None, None


def _is_predicate(tree, token):
    if token.upos in ("VERB", "AUX"):
        return True
    kids = {t.deprel for t in tree.children(token.index)}
    return bool(kids & {"cop", "aux", "auxpass", "nsubj", "nsubjpass", "dobj"})


def _intro_text(tree, root, complement):
    comp_span = set(tree.subtree_indices(complement.index))
    keep = [i for i in tree.subtree_indices(root.index) if i not in comp_span]
    # the complementizer of the clause belongs to the introduction
    for child in tree.children_by_rel(complement.index, "mark", "case"):
        keep.append(child.index)
    return _render_span(tree, sorted(keep), config=None)


def _incomplete_row(tree):
    return ClauseRow(modality="D", subject="", verb="", object=None,
                     notes=(("V", tree.text),
                            ("V", "no identifiable main verb")))


# ---------------------------------------------------------------------------
# coordination

def split_coordinations(tree, predicate=None, config=None):
    """Split the predicate's conj chain into frames with connectives.

    Returns the verb-level frames; subject/object-level coordination is
    expanded later, after voice conversion fixes the slots.
    """
    if predicate is None:
        predicate = tree.root
    children = tree.children(predicate.index)
    conjuncts = [c for c in children if c.deprel == "conj"]
    frames = []

    if not conjuncts:
        frame = Frame(tree=tree, verb=predicate)
        _fill_slots(frame, children)
        return [frame]

    last_conj = max(c.index for c in conjuncts)
    own, shared = [], []
    for child in children:
        if child.deprel in ("conj", "cc", "punct"):
            continue
        if child.deprel in ("nsubj", "nsubjpass", "csubj", *_AUX_RELS):
            shared.append(child)
        elif min(tree.subtree_indices(child.index)) > last_conj:
            shared.append(child)    # right-peripheral: reads over all conjuncts
        else:
            own.append(child)

    heads = [(predicate, None)]
    for conj in conjuncts:
        heads.append((conj, _connective(tree, predicate, conjuncts, conj, config)))

    for head, connective in heads:
        frame = Frame(tree=tree, verb=head, connective=connective)
        if head is predicate:
            _fill_slots(frame, own + shared)
        else:
            kids = [c for c in tree.children(head.index)
                    if c.deprel not in ("cc", "punct")]
            kids = [c for c in kids if not _is_seq_marker(tree, head, c)]
            _fill_slots(frame, kids)
            for dep in shared:
                _fill_slots(frame, [dep], shared=True)
        frames.append(frame)
    return frames


def _connective(tree, base, conjuncts, conjunct, config):
    ccs = sorted(tree.children_by_rel(base.index, "cc")
                 + tree.children_by_rel(conjunct.index, "cc"),
                 key=lambda t: t.index)
    prev = base.index
    for c in conjuncts:
        if c.index == conjunct.index:
            break
        prev = c.index
    chosen = None
    for cc in ccs:
        if prev < cc.index < conjunct.index:
            chosen = cc
    if chosen is None:
        return "AND"    # implicit coordination (comma-joined)
    lemma = chosen.lemma.lower()
    if lemma == "or":
        return "OR"
    if lemma == "then":
        return "SEQ"
    if lemma == "and" and _has_seq_marker(tree, conjunct, chosen):
        return "SEQ"
    return "AND"


def _has_seq_marker(tree, conjunct, cc):
    return any(_is_seq_marker(tree, conjunct, child, cc)
               for child in tree.children(conjunct.index))


def _is_seq_marker(tree, conjunct, child, cc=None):
    if child.deprel != "advmod" or child.lemma.lower() != "then":
        return False
    if cc is not None:
        return child.index == cc.index + 1
    ccs = tree.children_by_rel(conjunct.index, "cc") \
        + tree.children_by_rel(conjunct.head, "cc")
    return any(child.index == c.index + 1 for c in ccs)


def _fill_slots(frame, children, shared=False):
    for child in children:
        rel = child.deprel
        if rel == "punct":
            continue
        if rel in _AUX_RELS:
            frame.aux.append(child)
            if rel == "auxpass":
                frame.passive = True
        elif rel == "neg":
            frame.neg = True
        elif rel == "nsubj" and frame.subject is None:
            frame.subject = child
        elif rel == "nsubjpass" and frame.passive_subject is None:
            frame.passive_subject = child
            frame.passive = True
        elif rel == "dobj" and frame.obj is None:
            frame.obj = child
        elif rel == "iobj" and frame.iobj is None:
            frame.iobj = child
        elif rel == "agent" and frame.agent is None:
            frame.agent = child
        else:
            frame.modifiers.append(child)    # duplicate slots route to Notes


# ---------------------------------------------------------------------------
# voice

def convert_passive(frame):
    """Normalize a passive frame to active voice, in place.

    With an agent phrase the agent becomes Subject and the passive subject
    becomes Object.  Without one the passive subject stays Subject and the
    predicate renders as a bracketed copular participle, folding in the
    recipient preposition when a "to" phrase is present.  Active frames
    pass through untouched; the result never retains passive marking.
    """
    if not frame.passive:
        _finish_active_slots(frame)
        return frame

    tree = frame.tree
    agent = frame.agent
    if agent is None:
        agent = next((m for m in frame.modifiers if m.deprel == "prep:by"), None)
        if agent is not None:
            frame.modifiers.remove(agent)

    if agent is not None:
        frame.subject = agent
        frame.subject_exclude |= {c.index for c in tree.children_by_rel(agent.index, "case")}
        frame.obj = frame.passive_subject
        frame.agent = agent
    else:
        frame.subject = frame.passive_subject
        frame.verb_prefix = "[is] "
        frame.verb_surface = True
        recipient = next((m for m in frame.modifiers if m.deprel == "prep:to"), None)
        if recipient is not None:
            frame.modifiers.remove(recipient)
            frame.obj = recipient
            frame.object_exclude |= {c.index for c in
                                     tree.children_by_rel(recipient.index, "case")}
            frame.verb_fold = " [to]"
    frame.passive = False
    frame.passive_subject = None
    return frame


def _finish_active_slots(frame):
    # copular predicate ("is liable", "is the sole owner"): bracket the copula
    if frame.verb.upos in ("ADJ", "NOUN", "PROPN", "NUM") and \
            any(a.deprel == "cop" for a in frame.aux):
        frame.verb_prefix = "[is] "
        frame.verb_surface = True


# ---------------------------------------------------------------------------
# NP-slot coordination

def _split_np_slots(frame, config):
    tree = frame.tree
    subj_variants = _np_conjuncts(tree, frame.subject, config)
    obj_variants = _np_conjuncts(tree, frame.obj, config)

    out = []
    first = True
    for subj, subj_conn in subj_variants:
        for obj, obj_conn in obj_variants:
            sub = Frame(
                tree=tree, verb=frame.verb,
                connective=frame.connective,
                subject=subj, obj=obj, iobj=frame.iobj,
                aux=list(frame.aux), neg=frame.neg,
                agent=frame.agent,
                modifiers=list(frame.modifiers),
                subject_exclude=set(frame.subject_exclude),
                object_exclude=set(frame.object_exclude),
                verb_prefix=frame.verb_prefix,
                verb_fold=frame.verb_fold,
                verb_surface=frame.verb_surface,
            )
            if not first:
                if obj_conn is not None:
                    sub.connective = obj_conn
                elif subj_conn is not None:
                    sub.connective = subj_conn
                else:
                    sub.connective = frame.connective
            if subj is not None:
                sub.subject_exclude |= _conj_machinery(tree, subj)
            if obj is not None:
                sub.object_exclude |= _conj_machinery(tree, obj)
            out.append(sub)
            first = False
    return out


def _np_conjuncts(tree, head, config):
    if head is None:
        return [(None, None)]
    conjuncts = tree.children_by_rel(head.index, "conj")
    variants = [(head, None)]
    for conj in conjuncts:
        variants.append((conj, _connective(tree, head, conjuncts, conj, config)))
    return variants


def _conj_machinery(tree, head):
    return {c.index for c in tree.children(head.index)
            if c.deprel in ("conj", "cc")}


# ---------------------------------------------------------------------------
# modality

def modality_signals(verb_token, aux_children, config):
    """(source word, modality) pairs from auxiliaries and the predicate."""
    signals = []
    for token in list(aux_children) + [verb_token]:
        lemma = token.lemma.lower()
        if lemma in RULE_LAYER_MODALS:
            signals.append((lemma, RULE_LAYER_MODALS[lemma]))
        elif config.heuristics_enabled and lemma in config.modal_keywords:
            signals.append((lemma, config.modal_keywords[lemma]))
        elif config.heuristics_enabled and lemma in config.obligation_predicates:
            signals.append((lemma, "O"))
    return signals


def combine_modalities(modalities, neg_present):
    """Lattice maximum under F > O > P > D, then negation lifts O/P to F."""
    base = "D"
    for m in modalities:
        if _MODALITY_RANK[m] > _MODALITY_RANK[base]:
            base = m
    if neg_present and base in ("O", "P"):
        return "F"
    return base


def classify_modality(verb_token, aux_children, neg_present, config):
    """Modality of one predicate; signal order never matters."""
    signals = modality_signals(verb_token, aux_children, config)
    # "shall be" with a non-verbal predicate reads as a declaration, unless
    # some other signal independently establishes a modality
    if (config.heuristics_enabled
            and signals
            and all(source == "shall" for source, _ in signals)
            and verb_token.upos in ("ADJ", "NOUN", "PROPN")
            and any(a.lemma.lower() == "be" for a in aux_children)):
        signals = []
    return combine_modalities([m for _, m in signals], neg_present)


# ---------------------------------------------------------------------------
# anaphora and phrase rendering

def resolve_anaphora(token, config):
    """Normalized tag for a mapped pronoun, the surface form otherwise."""
    mapped = config.anaphora_map.get(token.lemma.lower())
    if mapped is None:
        mapped = config.anaphora_map.get(token.surface.lower())
    return mapped if mapped is not None else token.surface


def _anaphora_lookup(token, config):
    """Pronoun rewriting belongs to the heuristic layer; None when off."""
    if config is None or not config.heuristics_enabled:
        return None
    mapped = config.anaphora_map.get(token.lemma.lower())
    if mapped is None:
        mapped = config.anaphora_map.get(token.surface.lower())
    return mapped


def _is_possessive(token):
    return token.deprel == "poss" or token.feats.get("Poss") == "Yes"


def _render_span(tree, indices, config, head_index=None, lemma_head=False):
    """Detokenized text for a sorted index span.

    Brackets are dropped, determiners of genitive possessors are dropped,
    mapped pronouns are rewritten (possessives keep a genitive ``'s``),
    and the head may be replaced by its lemma.
    """
    words = []
    index_set = set(indices)
    for i in indices:
        tok = tree.token(i)
        if tok.surface in _BRACKETS:
            continue
        if tok.deprel == "det" and any(
                c.deprel == "possessive" for c in tree.children(tok.head)):
            continue
        if lemma_head and head_index is not None and i == head_index:
            words.append(tok.lemma)
            continue
        if config is not None and tok.upos == "PRON":
            mapped = _anaphora_lookup(tok, config)
            if mapped is not None:
                if _is_possessive(tok) and not any(
                        c.deprel == "possessive" for c in tree.children(tok.index)
                        if c.index in index_set):
                    words.append(mapped + "'s")
                else:
                    words.append(mapped)
                continue
        words.append(tok.surface)
    text = detokenize(words)
    return text.strip(" ,;:")


def render_phrase(tree, head, config, exclude=()):
    """Surface text of a dependent's subtree, for the list fields."""
    span = set(tree.subtree_indices(head.index))
    for ex in exclude:
        span -= set(tree.subtree_indices(ex))
    return _render_span(tree, sorted(span), config)


def normalize_phrase(tree, head, role, config, exclude=()):
    """Concise S/V/O field value for the NP or VP rooted at ``head``.

    The head word is lemmatized, articles and other determiners drop,
    Saxon genitives become of-constructions, mapped pronouns rewrite.
    """
    if role == "V":
        return head.lemma + "".join(
            " " + c.surface for c in tree.children_by_rel(head.index, "prt"))

    span = set(tree.subtree_indices(head.index))
    for ex in exclude:
        span -= set(tree.subtree_indices(ex))

    drop = set()
    for i in sorted(span):
        tok = tree.token(i)
        if tok.deprel in ("det", "predet", "punct", "possessive") or \
                tok.surface in _BRACKETS:
            drop.add(i)
        if tok.deprel == "case" and tok.head == head.index:
            drop.add(i)
    span -= drop

    poss = next((c for c in tree.children_by_rel(head.index, "poss")
                 if c.index in span), None)
    if poss is not None:
        owner = None
        if poss.upos == "PRON":
            owner = _anaphora_lookup(poss, config)   # unmapped: not convertible
        else:
            poss_span = set(tree.subtree_indices(poss.index)) & span
            owner = _render_span(tree, sorted(poss_span), config,
                                 head_index=poss.index, lemma_head=True)
        if owner:
            poss_span = set(tree.subtree_indices(poss.index)) & span
            rest = sorted(span - poss_span)
            head_part = _render_span(tree, rest, config,
                                     head_index=head.index, lemma_head=True)
            return f"{head_part} of {owner}"

    if head.upos == "PRON":
        others = sorted(span - {head.index})
        core = _anaphora_lookup(head, config) or head.surface
        if not others:
            return core
        return _render_span(tree, sorted(span), config)
    return _render_span(tree, sorted(span), config,
                        head_index=head.index, lemma_head=True)


# ---------------------------------------------------------------------------
# modifier routing

def route_modifiers(frame, config):
    """Distribute modifier phrases over Time/Adverbials/Conditions/Notes.

    Returns (time, adverbials, conditions, notes) lists of attributed
    phrases, and may fold a prepositional object into the frame.
    """
    tree = frame.tree
    heur = config.heuristics_enabled
    routed = []     # (position, field, attachment, text)

    def emit(field_name, attachment, head, exclude=()):
        text = render_phrase(tree, head, config, exclude=exclude)
        if text:
            routed.append((min(tree.subtree_indices(head.index)),
                           field_name, attachment, text))

    for role, np_head, exclude in (("S", frame.subject, frame.subject_exclude),
                                   ("O", frame.obj, frame.object_exclude)):
        if np_head is None:
            continue
        for child in tree.children(np_head.index):
            if child.index in exclude:
                continue
            rel = child.deprel
            if rel in _NP_NOTE_RELS:
                emit("notes", role, child)
                exclude.add(child.index)
            elif rel.startswith("prep:"):
                if heur and role == "O" and _is_temporal_pp(tree, child, config):
                    emit("time", "V", child)
                else:
                    emit("notes", role, child)
                exclude.add(child.index)
            elif rel in ("num", "number") and heur:
                routed.append((child.index, "conditions", role,
                               render_phrase(tree, child, config)))
                exclude.add(child.index)

    pending_pps = []
    for dep in sorted(frame.modifiers, key=lambda t: t.index):
        rel = dep.deprel
        if rel.startswith("prep:"):
            if heur and _is_temporal_pp(tree, dep, config):
                emit("time", "V", dep)
            else:
                pending_pps.append(dep)
        elif rel == "advmod":
            lemma = dep.lemma.lower()
            if heur and lemma in config.irrelevant_adverbs:
                continue
            if heur and lemma in config.time_markers:
                emit("time", "V", dep)
            else:
                emit("adverbials", "V", dep)
        elif rel == "advcl":
            marks = tree.children_by_rel(dep.index, "mark")
            mark_lemmas = {m.lemma.lower() for m in marks}
            if heur and mark_lemmas & set(config.condition_markers):
                emit("conditions", "V", dep)
            elif heur and mark_lemmas & set(config.time_markers):
                emit("time", "V", dep)
            else:
                emit("adverbials", "V", dep)
        elif rel in _VERB_NOTE_RELS:
            emit("notes", "V", dep)
        elif rel in ("mark", "prt", "case", "mwe", "predet", "preconj", "expl"):
            continue
        else:
            emit("notes", "V", dep)

    # prepositional-object fallback: no direct object extracted, so the
    # first remaining verb-governed PP supplies one
    if heur and frame.obj is None and pending_pps:
        pp = pending_pps.pop(0)
        frame.obj = pp
        cases = tree.children_by_rel(pp.index, "case")
        frame.object_exclude |= {c.index for c in cases}
        if cases:
            frame.verb_fold = f" [{cases[0].surface.lower()}]"
    for pp in pending_pps:
        emit("adverbials", "V", pp)

    if frame.iobj is not None and not heur:
        emit("notes", "V", frame.iobj)

    routed.sort(key=lambda item: item[0])
    fields = {"time": [], "adverbials": [], "conditions": [], "notes": []}
    for _pos, field_name, attachment, text in routed:
        fields[field_name].append((attachment, text))
    return fields


def _is_temporal_pp(tree, pp_head, config):
    prep = pp_head.deprel.split(":", 1)[1] if ":" in pp_head.deprel else ""
    if prep in config.temporal_prepositions:
        return True
    return pp_head.lemma.lower() in config.time_nouns


# ---------------------------------------------------------------------------
# row assembly

def _finish_frame(frame, config):
    tree = frame.tree
    fields = route_modifiers(frame, config)
    modality = classify_modality(frame.verb, frame.aux, frame.neg, config)

    subject_text = ""
    if frame.subject is not None:
        subject_text = normalize_phrase(tree, frame.subject, "S", config,
                                        exclude=frame.subject_exclude)
    object_text = None
    if frame.obj is not None:
        object_text = normalize_phrase(tree, frame.obj, "O", config,
                                       exclude=frame.object_exclude) or None

    verb_text = _verb_text(frame)
    notes = list(fields["notes"])
    if modality == "D" and frame.neg:
        notes.append(("V", "not"))

    row = ClauseRow(
        modality=modality,
        subject=subject_text,
        verb=verb_text,
        object=object_text,
        refinement=frame.connective,
        time=tuple(fields["time"]),
        adverbials=tuple(fields["adverbials"]),
        conditions=tuple(fields["conditions"]),
        notes=tuple(notes),
    )
    rows = [row]
    if frame.iobj is not None and config.heuristics_enabled:
        rows.append(ClauseRow(
            modality=modality,
            subject=subject_text,
            verb=verb_text + " [to]",
            object=normalize_phrase(tree, frame.iobj, "O", config) or None,
            refinement="AND",
        ))
    return rows


def _verb_text(frame):
    tree = frame.tree
    if frame.verb_surface:
        core = frame.verb.surface
    else:
        core = frame.verb.lemma
    for prt in tree.children_by_rel(frame.verb.index, "prt"):
        core += " " + prt.surface
    return f"{frame.verb_prefix}{core}{frame.verb_fold}"


def _with_extra_notes(row, extra):
    return ClauseRow(
        modality=row.modality, subject=row.subject, verb=row.verb,
        object=row.object, refinement=row.refinement, time=row.time,
        adverbials=row.adverbials, conditions=row.conditions,
        notes=tuple(list(row.notes) + list(extra)),
    )
