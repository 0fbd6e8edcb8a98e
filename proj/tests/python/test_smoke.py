import math

import pytest

import gcdc


def ba(seed, n=60, m=4):
    return gcdc.generate(f"family=BA n={n} m={m}", seed)


def test_graph_basics():
    g = gcdc.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.node_count == 4
    assert g.edge_count == 3
    assert g.has_edge(2, 1)
    assert g.degrees() == [1, 2, 2, 1]
    assert g.permuted([1, 0, 2, 3]) != g
    assert gcdc.sorted_matrix(g.permuted([3, 2, 1, 0])) == gcdc.sorted_matrix(g)


def test_generate_is_seeded():
    assert ba(5) == ba(5)
    assert ba(5) != ba(6)
    with pytest.raises(ValueError):
        gcdc.generate("family=BA n=10 m=10")


@pytest.mark.parametrize("coder", [gcdc.Coder.LABELED_IID, gcdc.Coder.STRUCT_IID,
                                   gcdc.Coder.STRUCT_DEGREE, gcdc.Coder.STRUCT_TRIANGLE])
def test_round_trip_universal(coder):
    g = ba(11)
    out = gcdc.encode(g, coder)
    back = gcdc.decode(out["container"])
    if coder == gcdc.Coder.LABELED_IID:
        assert back == g
    else:
        assert gcdc.sorted_matrix(back) == gcdc.sorted_matrix(g)
    assert out["actual_bits"] >= 1
    assert math.isfinite(out["ideal_bits"])


def test_learned_round_trip_and_model_text():
    model = gcdc.train_typical([ba(s) for s in range(10)])
    assert model.coder == gcdc.Coder.STRUCT_DEGREE
    again = gcdc.TypicalModel.load(model.save())
    assert again.coder == model.coder
    g = ba(99)
    out = gcdc.encode(g, gcdc.Coder.STRUCT_DEGREE, gcdc.Mode.LEARNED, model)
    assert gcdc.sorted_matrix(gcdc.decode(out["container"], model)) == gcdc.sorted_matrix(g)
    with pytest.raises(ValueError):
        gcdc.TypicalModel.load("gcdc-model 7\n")


def test_scores_separate_families():
    model = gcdc.train_typical([ba(s) for s in range(20)])
    typical = gcdc.score_batch(model, [ba(s) for s in range(100, 130)])
    er = gcdc.score_batch(model, [gcdc.generate("family=ER n=60 p=0.125", s) for s in range(30)])
    eer, _ = gcdc.equal_error_rate(typical, er)
    assert eer < 0.2
    one = gcdc.score(model, ba(100))
    assert one["score"] == pytest.approx(one["L_A"] - one["L_T"])
    assert one["score"] == pytest.approx(typical[0])


def test_overheads():
    assert gcdc.universal_overhead(gcdc.Coder.STRUCT_IID, 10) == pytest.approx(math.log2(46))
    assert gcdc.universal_overhead(gcdc.Coder.STRUCT_TRIANGLE, 10) == 0.0
