"""Simple and SimpleExt baselines and the comparison harness."""

import random

import pytest

import util_instances as gen
from rcckit import RCC8, Network
from rcckit.algebra import d8_41
from rcckit.baselines import ComparisonRow, compare, rows_to_csv, simple, simple_ext
from rcckit.redundancy import core_algorithm1, equivalent


def nested_chain():
    net = Network(RCC8, 3)
    net[0, 1] = "NTPP"
    net[1, 2] = "NTPP"
    net[0, 2] = "NTPP"
    return net


def test_simple_removes_implied_chain_edge():
    out = simple(nested_chain())
    assert set(out.constraint_pairs()) == {(0, 1), (1, 2)}


def test_simple_ext_removes_it_too():
    out = simple_ext(nested_chain())
    assert set(out.constraint_pairs()) == {(0, 1), (1, 2)}


def test_unfireable_network_unchanged():
    net = Network(RCC8, 3)
    net[0, 1] = "PO"
    net[1, 2] = "PO"
    net[0, 2] = "EC"
    assert simple(net) == net
    assert simple_ext(net) == net


def test_baselines_keep_at_least_the_prime_edges(example1):
    from rcckit.algebra import h5

    prime = core_algorithm1(example1, h5()).network
    s = simple(example1)
    ext = simple_ext(example1)
    assert set(prime.constraint_pairs()) <= set(ext.constraint_pairs())
    assert set(ext.constraint_pairs()) <= set(s.constraint_pairs())


def test_baselines_preserve_equivalence_small():
    for k, net in enumerate(gen.all_different_instances(
            d8_41(), 10, seed=61, n_lo=4, n_hi=6)):
        assert equivalent(net, simple(net))
        assert equivalent(net, simple_ext(net))


def test_removal_is_order_sensitive_but_deterministic():
    net = nested_chain()
    assert simple(net) == simple(net)
    assert simple_ext(net) == simple_ext(net)


def test_inputs_are_not_mutated():
    net = nested_chain()
    before = net.matrix.copy()
    simple(net)
    simple_ext(net)
    assert (net.matrix == before).all()


def test_compare_rows_and_nesting():
    nets = list(gen.all_different_instances(d8_41(), 6, seed=71,
                                            n_lo=4, n_hi=7))
    rows, csv_text = compare(nets)
    assert len(rows) == len(nets)
    header = csv_text.splitlines()[0].split(",")
    from dataclasses import fields

    assert header == [f.name for f in fields(ComparisonRow)]
    for row, net in zip(rows, nets):
        assert row.prime_kept <= row.simpleext_kept <= row.simple_kept
        assert row.constraint_total == net.constraint_count()
        assert row.prime_method == "algorithm1"
        assert row.prime_checks >= 0 and row.simple_checks > 0


def test_compare_single_scenario_keeps_equivalent_network():
    sc = gen.random_scenario(5, 83)
    rows, _ = compare([sc])
    assert rows[0].prime_kept <= rows[0].simple_kept
    prime = core_algorithm1(sc).network
    assert equivalent(sc, prime)
    assert equivalent(sc, simple(sc))


def test_compare_empty_batch():
    rows, csv_text = compare([])
    assert rows == []
    lines = csv_text.splitlines()
    assert len(lines) == 1 and lines[0].startswith("n,constraint_total")


def test_compare_falls_back_to_iterative(example1):
    rows, _ = compare([example1])
    assert rows[0].prime_method == "iterative"
    assert rows[0].prime_kept == 5  # everything but the one redundant edge


def test_csv_is_deterministic():
    nets = list(gen.all_different_instances(d8_41(), 3, seed=97,
                                            n_lo=4, n_hi=5))
    _, a = compare(nets)
    _, b = compare(nets)
    # timing columns differ run to run; the structural columns must not
    stable = [",".join(line.split(",")[:8]) for line in a.splitlines()]
    stable_b = [",".join(line.split(",")[:8]) for line in b.splitlines()]
    assert stable == stable_b
