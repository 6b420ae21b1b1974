"""Network model, serialization, and structural operations."""

import json

import numpy as np
import pytest

from rcckit import RCC5, RCC8, Network
from rcckit.errors import (
    ConverseConflictError,
    InconsistentNetworkError,
    NetworkFormatError,
    NetworkShapeError,
)
from rcckit.network import (
    amalgamate,
    from_json,
    loads,
    refines,
    remove_constraint,
    restrict,
    save,
    to_json,
    to_rcc5,
)
from rcckit.reasoning import a_closure


def test_new_network_is_universal_with_eq_diagonal():
    net = Network(RCC8, 3)
    net.validate()
    assert net[0, 1].is_universal
    assert str(net[1, 1]) == "EQ"
    assert net.labels == ("v1", "v2", "v3")


def test_setitem_mirrors_converse():
    net = Network(RCC5, 2)
    net[1, 0] = "PPi"
    assert str(net[0, 1]) == "PP"
    net.validate()


def test_diagonal_is_locked():
    net = Network(RCC5, 2)
    with pytest.raises(NetworkShapeError):
        net[0, 0] = "DR"
    net[0, 0] = "EQ"  # no-op is fine


def test_load_normalizes_and_round_trips():
    text = "calculus RCC5\nvars 2\n1 2 PP\n"
    net = loads(text)
    assert str(net[1, 0]) == "PPi"
    assert save(net) == text
    assert save(loads(save(net))) == save(net)


def test_load_comments_gaps_and_universal():
    net = loads("""
# header comment
calculus RCC8
vars 3
1 2 DC|EC   # trailing comment
2 3 *
""")
    assert str(net[0, 1]) == "DC|EC"
    assert net[1, 2].is_universal
    assert net[0, 2].is_universal
    assert net.constraint_count() == 1


def test_load_labels():
    net = loads("calculus RCC8\nvars 2\nlabels A B\n1 2 EC\n")
    assert net.labels == ("A", "B")
    assert "labels A B" in save(net)


def test_load_errors_carry_line_numbers():
    with pytest.raises(NetworkFormatError) as err:
        loads("calculus RCC5\nvars 2\n1 2 WONKY\n")
    assert "line 3" in str(err.value)
    with pytest.raises(NetworkFormatError):
        loads("vars 2\n1 2 PP\n")
    with pytest.raises(NetworkFormatError):
        loads("calculus RCC5\nvars 2\n1 9 PP\n")
    with pytest.raises(NetworkFormatError) as err:
        loads("calculus RCC5\nvars 2\n1 1 DR\n")
    assert "diagonal" in str(err.value)
    loads("calculus RCC5\nvars 2\n1 1 EQ\n")  # diagonal EQ is accepted


def test_converse_conflict_detection():
    with pytest.raises(ConverseConflictError):
        loads("calculus RCC5\nvars 2\n1 2 PP\n2 1 PP\n")
    # converse-consistent duplicate is fine
    net = loads("calculus RCC5\nvars 2\n1 2 PP\n2 1 PPi\n")
    assert str(net[0, 1]) == "PP"
    with pytest.raises(ConverseConflictError):
        loads("calculus RCC5\nvars 2\n1 2 PP\n1 2 PO\n")


def test_save_is_sorted_and_stable(example1):
    text = save(example1)
    lines = [l for l in text.splitlines() if l[0].isdigit()]
    assert lines == sorted(lines, key=lambda l: tuple(map(int, l.split()[:2])))
    assert save(loads(text)) == text


def test_json_round_trip(example1):
    doc = to_json(example1)
    assert doc["schema"] == 1
    assert from_json(doc) == example1
    assert from_json(json.loads(json.dumps(doc))) == example1


def test_refines():
    star = Network(RCC5, 3)
    net = Network(RCC5, 3)
    net[0, 1] = "PP"
    assert refines(net, star)
    assert not refines(star, net)
    assert refines(net, net)
    with pytest.raises(NetworkShapeError):
        refines(net, Network(RCC5, 4))
    with pytest.raises(NetworkShapeError):
        refines(net, Network(RCC8, 3))


def test_scenario_refines_source(example1):
    from rcckit.reasoning import solve

    scenario = solve(example1)
    assert scenario.is_scenario
    assert refines(scenario, example1)


def test_aclosure_refines_input(example1):
    closed = a_closure(example1).network
    assert refines(closed, example1)


def test_restrict():
    net = Network(RCC5, 3, ["a", "b", "c"])
    net[0, 1] = "PP"
    one = restrict(net, ["b"])
    assert one.n == 1 and str(one[0, 0]) == "EQ"
    two = restrict(net, ["a", "b"])
    assert str(two[0, 1]) == "PP" and two.labels == ("a", "b")
    again = restrict(restrict(net, ["a", "b"]), ["a"])
    assert again == restrict(net, ["a"])
    with pytest.raises(NetworkShapeError):
        restrict(net, ["nope"])
    with pytest.raises(NetworkShapeError):
        restrict(net, [])


def test_restrict_example1(example1):
    sub = restrict(example1, [0, 1])
    assert str(sub[0, 1]) == "PP"


def test_remove_constraint(example1):
    out = remove_constraint(example1, 0, 1)
    assert out[0, 1].is_universal and out[1, 0].is_universal
    assert example1[0, 1].mask == RCC5.parse("PP")  # input untouched
    assert remove_constraint(out, 0, 1) == out  # idempotent
    star = Network(RCC5, 2)
    assert remove_constraint(star, 0, 1) == star  # universal: no-op
    with pytest.raises(NetworkShapeError):
        remove_constraint(example1, 2, 2)


def test_amalgamate_example2(example2):
    merged = amalgamate(example2, [[0, 1, 2], [3]])
    assert merged.n == 2
    assert str(merged[0, 1]) == "PO"
    assert merged.labels == ("v1", "v4")


def test_amalgamate_singletons_is_identity(example1):
    merged = amalgamate(example1, [[i] for i in range(example1.n)])
    assert merged == example1


def test_amalgamate_dr_pair_is_inconsistent():
    net = Network(RCC5, 2)
    net[0, 1] = "DR"
    with pytest.raises(InconsistentNetworkError):
        amalgamate(net, [[0, 1]])


def test_amalgamate_requires_entailed_equality():
    net = Network(RCC5, 2)
    net[0, 1] = "PP|EQ"
    with pytest.raises(NetworkShapeError):
        amalgamate(net, [[0, 1]])


def test_amalgamate_rejects_partial_partition(example2):
    with pytest.raises(NetworkShapeError):
        amalgamate(example2, [[0, 1], [3]])
    with pytest.raises(NetworkShapeError):
        amalgamate(example2, [[0, 1, 2], [1, 3]])


def test_amalgamate_rejects_uncovered_equalities(example2):
    # v1=v2=v3 is entailed, so splitting them across classes must fail
    with pytest.raises(NetworkShapeError):
        amalgamate(example2, [[0, 1], [2], [3]])


def test_to_rcc5_coarsening():
    net = Network(RCC8, 3)
    net[0, 1] = "DC|EC"
    net[1, 2] = "TPP|NTPP"
    five = to_rcc5(net)
    assert five.calculus is RCC5
    assert str(five[0, 1]) == "DR"
    assert str(five[1, 2]) == "PP"
    assert str(five[2, 1]) == "PPi"
    assert five[0, 2].is_universal


def test_validate_catches_broken_invariants():
    net = Network(RCC5, 2)
    net.matrix[0, 1] = RCC5.parse("PP")
    net.matrix[1, 0] = RCC5.parse("PP")  # should be PPi
    with pytest.raises(NetworkShapeError):
        net.validate()
    net2 = Network(RCC5, 2)
    net2.matrix[0, 0] = RCC5.parse("DR")
    with pytest.raises(NetworkShapeError):
        net2.validate()


def test_digest_is_stable(example1):
    assert example1.digest() == example1.copy().digest()
    other = remove_constraint(example1, 0, 1)
    assert other.digest() != example1.digest()


def test_labels_must_be_unique():
    with pytest.raises(NetworkShapeError):
        Network(RCC5, 2, ["x", "x"])
    with pytest.raises(NetworkShapeError):
        Network(RCC5, 2, ["x"])


def test_equality_includes_labels():
    a = Network(RCC5, 2, ["a", "b"])
    b = Network(RCC5, 2)
    assert a != b
    assert np.array_equal(a.matrix, b.matrix)
