import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octkernel.graph import Graph, path_graph
from octkernel.instances import (
    AnnotatedInstance,
    FormatError,
    OctInstance,
    RestrictedInstance,
    parse_decomposition,
    parse_instance,
    relabel_dense,
    write_decomposition,
    write_instance,
)
from octkernel.treewidth import decompose

from strategies import graphs

TRIANGLE = "p oct 3 3\ne 0 1\ne 0 2\ne 1 2\nl 1\n"


def test_parse_plain():
    inst = parse_instance("# a comment\n" + TRIANGLE)
    assert type(inst) is OctInstance
    assert inst.graph.edges() == [(0, 1), (0, 2), (1, 2)] and inst.budget == 1 and not inst.modulator


def test_dispatch_on_directives():
    ann = parse_instance("p oct 3 0\nx 0\nx 1\nm 0 1\nl 0\n")
    assert type(ann) is AnnotatedInstance and ann.mono == {(0, 1)}
    res = parse_instance("p oct 3 0\nx 0\nz 0\nz 2\nl 0\n")
    assert type(res) is RestrictedInstance and res.deletable == {0, 2}


@pytest.mark.parametrize(
    "text",
    [
        "e 0 1\np oct 2 1\nl 0\n",  # directive before header
        "p oct 2 1\nl 0\n",  # edge count mismatch
        "p oct 2 1\ne 0 0\nl 0\n",  # self-loop
        "p oct 2 2\ne 0 1\ne 1 0\nl 0\n",  # duplicate edge
        "p oct 2 1\ne 0 2\nl 0\n",  # id out of range
        "p oct 2 0\n",  # no budget
        "p oct 2 0\nq 1\nl 0\n",  # unknown directive
        "p oct 2 0\nw 0 -1\nl 0\n",  # negative weight
        "p oct 2 0\nl zero\n",  # non-integer
        "p oct 2 0\nm 0 1\nl 0\n",  # annotated pair outside X
    ],
)
def test_parse_errors(text):
    with pytest.raises((FormatError, ValueError)):
        parse_instance(text)


def test_writer_order_is_canonical():
    text = "p oct 4 2\nl 2\nw 3 7\nx 2\ne 2 3\ne 0 1\n"
    assert write_instance(parse_instance(text)) == "p oct 4 2\ne 0 1\ne 2 3\nx 2\nw 3 7\nl 2\n"


def test_writer_requires_dense_ids():
    inst = OctInstance(path_graph(4).remove_vertices([1]), frozenset(), 0)
    with pytest.raises(ValueError):
        write_instance(inst)
    dense, mapping = relabel_dense(inst)
    assert mapping == {0: 0, 2: 1, 3: 2} and dense.graph.edges() == [(1, 2)]


@settings(max_examples=100)
@given(graphs(max_n=8, weighted=True), st.data())
def test_round_trip(g, data):
    x = frozenset(data.draw(st.sets(st.sampled_from(g.vertices)))) if len(g) else frozenset()
    kind = data.draw(st.sampled_from(["plain", "annotated", "restricted"]))
    ell = data.draw(st.integers(-1, 5))
    xs = sorted(x)
    pairs = [(a, b) for i, a in enumerate(xs) for b in xs[i + 1 :]]
    mono = frozenset(data.draw(st.sets(st.sampled_from(pairs)))) if pairs else frozenset()
    if kind == "plain":
        inst = OctInstance(g, x, ell)
    elif kind == "annotated":
        inst = AnnotatedInstance(graph=g, modulator=x, budget=ell, mono=mono)
    else:
        if not len(g):
            return
        z = frozenset(data.draw(st.sets(st.sampled_from(g.vertices), min_size=1)))
        inst = RestrictedInstance(graph=g, modulator=x, budget=ell, mono=mono, deletable=z)
    text = write_instance(inst)
    back = parse_instance(text)
    assert write_instance(back) == text
    assert back.graph == inst.graph and back.modulator == inst.modulator and back.budget == ell
    if kind == "restricted":
        assert back == inst
    elif kind == "annotated" and mono:
        assert back == inst


def test_restricted_without_deletable_refused():
    inst = RestrictedInstance(graph=path_graph(2), modulator=frozenset(), budget=0, deletable=frozenset())
    with pytest.raises(ValueError):
        write_instance(inst)


def test_decomposition_round_trip():
    g = Graph(range(6), [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
    td = decompose(g, 2)
    text = write_decomposition(td)
    assert write_decomposition(parse_decomposition(text)) == text


def test_decomposition_rejects_two_roots():
    with pytest.raises(FormatError):
        parse_decomposition("b 0 1\nb 1 2\n")
