import random

import pytest

from annoforge.errors import (CannotDeleteLeaf, CannotDeleteRoot,
                              CannotFoldLeaf, CannotFoldRoot, EmptySentence,
                              MixedParents, NonContiguousSiblings,
                              TooFewChildren, UnknownNode)
from annoforge.tree_editor import build_doc, init_forest

from genutil import random_group, random_tree_doc, random_valid_tree_op

ASBESTOS = "There is no asbestos in our products now.".split()


def doc_fingerprint(doc):
    snap = doc.snapshot()
    snap.pop("next_id")
    return snap


class TestInitForest:
    def test_single_token(self):
        doc = init_forest(["hi"])
        root = doc.nodes[doc.virtual_root]
        assert root.children == [1]
        assert doc.nodes[1].is_leaf

    def test_eight_token_sentence_has_eight_leaves(self):
        doc = init_forest(ASBESTOS)
        assert len(ASBESTOS) == 8
        assert len(doc.nodes[doc.virtual_root].children) == 8
        assert doc.leaf_order() == ASBESTOS

    def test_leaf_order_is_identity_on_any_tokens(self):
        rng = random.Random(0)
        for _ in range(50):
            tokens = [f"t{i}" for i in range(rng.randint(1, 30))]
            assert init_forest(tokens).leaf_order() == tokens

    def test_empty_sentence_rejected(self):
        with pytest.raises(EmptySentence):
            init_forest([])


class TestGroupNodes:
    def test_grouping_replaces_run_in_place(self):
        doc = init_forest(["a", "b", "c", "d"])
        new_id = doc.group_nodes([2, 3])
        root = doc.nodes[doc.virtual_root]
        assert root.children == [1, new_id, 4]
        assert doc.nodes[new_id].children == [2, 3]
        assert doc.nodes[2].parent == new_id
        assert doc.leaf_order() == ["a", "b", "c", "d"]

    def test_grouping_everything_builds_one_spanning_node(self):
        doc = init_forest(["a", "b", "c", "d", "e"])
        new_id = doc.group_nodes([1, 2, 3, 4, 5])
        assert doc.nodes[doc.virtual_root].children == [new_id]
        assert doc.leaf_order() == ["a", "b", "c", "d", "e"]

    def test_nested_grouping(self):
        doc = init_forest(["a", "b", "c"])
        inner = doc.group_nodes([1, 2])
        outer = doc.group_nodes([inner, 3])
        assert doc.nodes[doc.virtual_root].children == [outer]
        assert doc.nodes[outer].children == [inner, 3]

    def test_too_few_children(self):
        doc = init_forest(["a", "b"])
        with pytest.raises(TooFewChildren):
            doc.group_nodes([1])

    def test_mixed_parents_rejected(self):
        doc = init_forest(["a", "b", "c"])
        doc.group_nodes([1, 2])
        with pytest.raises(MixedParents):
            doc.group_nodes([1, 3])

    def test_virtual_root_cannot_be_grouped(self):
        doc = init_forest(["a", "b"])
        with pytest.raises(MixedParents):
            doc.group_nodes([doc.virtual_root, 1])

    def test_non_contiguous_selection_rejected(self):
        doc = init_forest(["a", "b", "c"])
        with pytest.raises(NonContiguousSiblings):
            doc.group_nodes([1, 3])

    def test_out_of_order_selection_rejected(self):
        doc = init_forest(["a", "b", "c"])
        with pytest.raises(NonContiguousSiblings):
            doc.group_nodes([2, 1])

    def test_repeated_node_rejected(self):
        doc = init_forest(["a", "b"])
        with pytest.raises(NonContiguousSiblings):
            doc.group_nodes([1, 1])

    def test_unknown_node_rejected(self):
        doc = init_forest(["a", "b"])
        with pytest.raises(UnknownNode):
            doc.group_nodes([1, 99])

    def test_leaf_order_invariant_under_random_groupings(self):
        rng = random.Random(11)
        for _ in range(500):
            tokens = [f"w{i}" for i in range(20)]
            doc = init_forest(tokens)
            for _ in range(rng.randint(1, 12)):
                if random_group(rng, doc) is None:
                    break
            assert doc.leaf_order() == tokens


class TestDeleteNode:
    def test_group_then_delete_restores_document(self):
        rng = random.Random(3)
        for _ in range(200):
            doc = random_tree_doc(rng, rng.randint(2, 15), rng.randint(0, 6))
            before = doc_fingerprint(doc)
            new_id = random_group(rng, doc)
            if new_id is None:
                continue
            doc.delete_node(new_id)
            assert doc_fingerprint(doc) == before

    def test_delete_splices_children_in_place(self):
        doc = init_forest(["a", "b", "c", "d"])
        mid = doc.group_nodes([2, 3])
        doc.delete_node(mid)
        assert doc.nodes[doc.virtual_root].children == [1, 2, 3, 4]
        assert doc.nodes[2].parent == doc.virtual_root

    def test_deleting_all_internal_nodes_flattens_to_forest(self):
        rng = random.Random(17)
        for _ in range(100):
            tokens = [f"w{i}" for i in range(rng.randint(2, 16))]
            doc = init_forest(tokens)
            flat = doc_fingerprint(doc)
            for _ in range(30):
                if random_group(rng, doc) is None:
                    break
            internal = doc.internal_ids()
            rng.shuffle(internal)
            for node_id in internal:
                doc.delete_node(node_id)
            assert doc_fingerprint(doc) == flat

    def test_leaf_cannot_be_deleted(self):
        doc = init_forest(["a", "b"])
        with pytest.raises(CannotDeleteLeaf):
            doc.delete_node(1)

    def test_root_cannot_be_deleted(self):
        doc = init_forest(["a", "b"])
        with pytest.raises(CannotDeleteRoot):
            doc.delete_node(doc.virtual_root)

    def test_unknown_node(self):
        doc = init_forest(["a"])
        with pytest.raises(UnknownNode):
            doc.delete_node(42)


class TestToggleFold:
    def test_double_toggle_is_identity(self):
        doc = init_forest(["a", "b"])
        node = doc.group_nodes([1, 2])
        before = doc_fingerprint(doc)
        assert doc.toggle_fold(node) is True
        assert doc.toggle_fold(node) is False
        assert doc_fingerprint(doc) == before

    def test_folding_does_not_change_structure(self):
        doc = init_forest(["a", "b", "c"])
        node = doc.group_nodes([1, 2])
        shape_before = doc.shape()
        doc.toggle_fold(node)
        assert doc.shape() == shape_before

    def test_leaf_cannot_fold(self):
        doc = init_forest(["a", "b"])
        with pytest.raises(CannotFoldLeaf):
            doc.toggle_fold(1)

    def test_root_cannot_fold(self):
        doc = init_forest(["a", "b"])
        with pytest.raises(CannotFoldRoot):
            doc.toggle_fold(doc.virtual_root)


class TestFoldedLabel:
    def test_leaf_label_is_its_token(self):
        doc = init_forest(["dog"])
        assert doc.folded_label(1) == "dog"

    def test_grouped_span_joins_tokens(self):
        doc = init_forest(ASBESTOS)
        node = doc.group_nodes([3, 4])  # "no asbestos"
        assert doc.folded_label(node) == "no asbestos"

    def test_virtual_root_label_is_the_sentence(self):
        doc = init_forest(ASBESTOS)
        assert doc.folded_label(doc.virtual_root) == " ".join(ASBESTOS)


class TestLeafOrderFuzz:
    def test_node_count_deltas(self):
        doc = init_forest(["a", "b", "c"])
        n = len(doc.nodes)
        node = doc.group_nodes([1, 2])
        assert len(doc.nodes) == n + 1
        doc.toggle_fold(node)
        assert len(doc.nodes) == n + 1
        doc.delete_node(node)
        assert len(doc.nodes) == n

    def test_structure_stays_a_single_tree(self):
        rng = random.Random(23)
        for _ in range(100):
            tokens = [f"w{i}" for i in range(rng.randint(2, 12))]
            doc = init_forest(tokens)
            for _ in range(rng.randint(1, 25)):
                random_valid_tree_op(rng, doc)
                seen = [n.id for n in doc.iter_subtree(doc.virtual_root)]
                assert sorted(seen) == sorted(doc.nodes)
                for node in doc.nodes.values():
                    for child in node.children:
                        assert doc.nodes[child].parent == node.id

    def test_random_op_sequences_keep_leaf_order(self):
        rng = random.Random(31)
        tokens = [f"w{i}" for i in range(20)]
        for _ in range(300):
            doc = init_forest(tokens)
            for _ in range(rng.randint(1, 15)):
                random_valid_tree_op(rng, doc)
                assert doc.leaf_order() == tokens


class TestBuildDoc:
    def test_flat_forest(self):
        doc = build_doc(["a", "b"], [0, 1])
        assert doc.shape() == init_forest(["a", "b"]).shape()

    def test_nested_structure(self):
        doc = build_doc(["a", "b", "c"], [[[0, 1], 2]])
        assert doc.shape() == (((0, 1), 2),)

    def test_single_child_constituent_allowed(self):
        doc = build_doc(["a", "b"], [[[0, 1]]])
        assert doc.shape() == (((0, 1),),)

    def test_wrong_coverage_rejected(self):
        with pytest.raises(ValueError):
            build_doc(["a", "b"], [1, 0])
