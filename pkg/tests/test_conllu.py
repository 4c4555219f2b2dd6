import pytest

from clausekit.conllu import (ConlluParseError, TreeStructureError, detokenize,
                              parse_conllu, to_conllu)

MINIMAL = """\
1\tUsers\tuser\tNOUN\tNNS\t_\t2\tnsubj\t_\t_
2\tcomply\tcomply\tVERB\tVBP\t_\t0\troot\t_\t_
"""


def test_minimal_two_token_sentence():
    trees = parse_conllu(MINIMAL)
    assert len(trees) == 1
    tree = trees[0]
    assert tree.sentence_id == "1"
    assert tree.root.index == 2
    assert tree.token(1).deprel == "nsubj"
    assert tree.token(1).head == 2
    assert tree.token(1).lemma == "user"


def test_sentence_id_from_comment():
    trees = parse_conllu("# sent_id = tos-17\n# text = Users comply\n" + MINIMAL)
    assert trees[0].sentence_id == "tos-17"
    assert trees[0].text == "Users comply"


def test_golden_sentence_three_structure(golden_trees):
    tree = next(t for t in golden_trees if t.sentence_id == "3")
    root = tree.root
    assert root.surface == "upload"
    rels = {(t.deprel, t.surface) for t in tree.children(root.index)}
    assert ("aux", "will") in rels
    assert ("neg", "not") in rels
    assert ("dobj", "viruses") in rels
    dobj = next(t for t in tree.tokens if t.deprel == "dobj")
    conj = tree.children_by_rel(dobj.index, "conj")
    assert [t.surface for t in conj] == ["code"]


def test_two_roots_is_structural_error():
    bad = MINIMAL + "\n" + (
        "1\tOwners\towner\tNOUN\tNNS\t_\t0\troot\t_\t_\n"
        "2\tpay\tpay\tVERB\tVBP\t_\t0\troot\t_\t_\n")
    with pytest.raises(TreeStructureError) as exc:
        parse_conllu(bad)
    assert "sentence 2" in str(exc.value)


def test_cycle_is_structural_error():
    bad = ("1\ta\ta\tX\tX\t_\t2\tdep\t_\t_\n"
           "2\tb\tb\tX\tX\t_\t1\tdep\t_\t_\n"
           "3\tc\tc\tX\tX\t_\t0\troot\t_\t_\n")
    with pytest.raises(TreeStructureError):
        parse_conllu(bad)


def test_wrong_column_count_names_line():
    with pytest.raises(ConlluParseError) as exc:
        parse_conllu("# text = x\n1\tonly\tthree\n")
    assert "line 2" in str(exc.value)


def test_non_integer_head_names_line():
    with pytest.raises(ConlluParseError) as exc:
        parse_conllu("1\ta\ta\tX\tX\t_\tzero\tdep\t_\t_\n")
    assert "line 1" in str(exc.value)


def test_multiword_ranges_and_empty_nodes_skipped():
    text = ("1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
            "1\tdo\tdo\tAUX\tVBP\t_\t3\taux\t_\t_\n"
            "2\tn't\tnot\tPART\tRB\t_\t3\tneg\t_\t_\n"
            "2.1\tghost\tghost\tX\tX\t_\t_\t_\t_\t_\n"
            "3\tshare\tshare\tVERB\tVB\t_\t0\troot\t_\t_\n")
    trees = parse_conllu(text)
    assert [t.surface for t in trees[0].tokens] == ["do", "n't", "share"]


def test_underscore_lemma_falls_back_to_lowercased_surface():
    trees = parse_conllu("1\tViruses\t_\tNOUN\tNNS\t_\t0\troot\t_\t_\n")
    assert trees[0].token(1).lemma == "viruses"


def test_roundtrip_through_serialization(golden_trees):
    again = parse_conllu(to_conllu(golden_trees))
    assert len(again) == len(golden_trees)
    for a, b in zip(golden_trees, again):
        assert a.sentence_id == b.sentence_id
        assert a.text == b.text
        assert a.tokens == b.tokens


def test_every_parse_output_is_a_valid_tree(golden_trees):
    for tree in golden_trees:
        roots = [t for t in tree.tokens if t.head == 0]
        assert len(roots) == 1
        for tok in tree.tokens:
            assert tok.head != tok.index
        # reachability is enforced on construction; touching .root suffices
        assert tree.root is not None


def test_detokenize_handles_clitics_and_commas():
    words = ["at", "renter", "'s", "risk", ",", "cost", "and", "expense"]
    assert detokenize(words) == "at renter's risk, cost and expense"
    assert detokenize(["(", "such", "as", "spam", ")"]) == "(such as spam)"
