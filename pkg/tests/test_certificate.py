import json

import pytest

from binstretch.certificate import (
    CertificateParseError,
    ProofNode,
    ProofTree,
    deserialize,
    serialize,
    verify,
)
from binstretch.core import GameParams
from binstretch.search import SearchOptions, solve


@pytest.fixture(scope="module")
def proof_2_3_4():
    v = solve(GameParams(2, 3, 4), SearchOptions(engine="reference", record_proof=True))
    assert v.proven
    return v.proof


def test_recorded_proof_passes(proof_2_3_4):
    report = verify(proof_2_3_4, GameParams(2, 3, 4))
    assert report.ok
    assert report.value == 4
    assert report.leaves >= 1


def test_round_trip_structural_equality(proof_2_3_4):
    data = serialize(proof_2_3_4)
    again = deserialize(data)
    assert again == proof_2_3_4
    assert deserialize(serialize(again)) == again


def test_verify_against_higher_target_fails(proof_2_3_4):
    report = verify(proof_2_3_4, GameParams(2, 3, 5))
    assert not report.ok
    assert report.code == "leaf-below-target"


def test_empty_file_is_parse_error():
    with pytest.raises(CertificateParseError):
        deserialize(b"")


def test_truncated_file_is_parse_error(proof_2_3_4):
    data = serialize(proof_2_3_4)
    with pytest.raises(CertificateParseError):
        deserialize(data[: len(data) // 2])


def test_schema_violations_report_path():
    with pytest.raises(CertificateParseError, match="header"):
        deserialize(json.dumps({"m": 2, "g": 3, "t": "4", "format_version": 1}).encode())
    good = {
        "m": 2, "g": 3, "t": 4, "format_version": 1,
        "root": {"loads": [0, 0], "item": 1, "children": [{"loads": [1, 0]}]},
    }
    bad = json.loads(json.dumps(good))
    bad["root"]["children"][0]["loads"] = [1, "x"]
    with pytest.raises(CertificateParseError, match=r"root\.children\[0\]\.loads"):
        deserialize(json.dumps(bad).encode())


def test_missing_placement_detected(proof_2_3_4):
    def drop_first_child(node):
        if node.is_leaf:
            return node
        if len(node.children) > 1:
            return ProofNode(node.loads, node.item, node.children[1:])
        return ProofNode(node.loads, node.item, tuple(drop_first_child(c) for c in node.children))

    tampered = ProofTree(proof_2_3_4.params, drop_first_child(proof_2_3_4.root))
    report = verify(tampered, GameParams(2, 3, 4))
    assert not report.ok
    assert report.code == "missing-placement"


def test_leaf_edit_detected(proof_2_3_4):
    def lower_first_leaf(node):
        if node.is_leaf:
            return ProofNode((3, node.loads[1]))
        return ProofNode(
            node.loads, node.item,
            (lower_first_leaf(node.children[0]),) + node.children[1:],
        )

    tampered = ProofTree(proof_2_3_4.params, lower_first_leaf(proof_2_3_4.root))
    report = verify(tampered, GameParams(2, 3, 4))
    assert not report.ok
    assert report.code in ("leaf-below-target", "load-mismatch")


def test_bad_root_detected(proof_2_3_4):
    tampered = ProofTree(
        proof_2_3_4.params,
        ProofNode((1, 0), proof_2_3_4.root.item, proof_2_3_4.root.children),
    )
    report = verify(tampered, GameParams(2, 3, 4))
    assert not report.ok
    assert report.code == "root-shape"


def test_child_reordering_still_passes(proof_2_3_4):
    def reverse_children(node):
        if node.is_leaf:
            return node
        return ProofNode(
            node.loads, node.item, tuple(reverse_children(c) for c in node.children[::-1])
        )

    shuffled = ProofTree(proof_2_3_4.params, reverse_children(proof_2_3_4.root))
    assert verify(shuffled, GameParams(2, 3, 4)).ok


def test_oversized_item_rejected():
    tree = ProofTree(
        GameParams(2, 3, 4),
        ProofNode((0, 0), 4, (ProofNode((4, 0)),)),
    )
    report = verify(tree, GameParams(2, 3, 4))
    assert not report.ok
    assert report.code == "illegal-item"


def test_infeasible_item_sequence_rejected():
    # two items of size 3 at g=3 leave no room for another 3
    leafish = ProofNode((3, 3))
    inner2 = ProofNode((3, 3), 3, (ProofNode((6, 3)), ProofNode((6, 3))))
    inner1 = ProofNode((3, 0), 3, (ProofNode((6, 0)), inner2))
    tree = ProofTree(GameParams(2, 3, 4), ProofNode((0, 0), 3, (inner1,)))
    report = verify(tree, GameParams(2, 3, 4))
    assert not report.ok
    assert report.code in ("illegal-item", "missing-placement")
