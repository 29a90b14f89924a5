import pytest

import stsp


def small_instance():
    return stsp.generate_instance(3, seed=5)


def test_generate_and_round_trip():
    inst = small_instance()
    assert inst.num_nodes == 4
    assert inst.terminals == [1, 2]
    assert stsp.Instance.load(inst.save()) == inst
    assert all(20 <= cost <= 50 for _, _, _, cost in inst.arcs)


def test_reduce_keeps_the_optimum_bounded():
    inst = stsp.generate_instance(4, seed=2, density=0.9)
    reduced, report = stsp.reduce(inst)
    assert reduced.num_arcs <= inst.num_arcs
    assert report.startswith("mean_cost ")
    assert stsp.optimal_cost(reduced)[0] >= stsp.optimal_cost(inst)[0]


def test_model_and_qubo_sizes():
    inst = small_instance()
    model = stsp.build_model(inst)
    assert model.horizon == inst.num_arcs
    assert model.num_variables == inst.num_arcs ** 2
    qubo = stsp.to_qubo(model)
    assert qubo.num_decision == model.num_variables
    assert qubo.num_variables >= model.num_variables
    assert stsp.Qubo.parse(qubo.export(), qubo.export_varmap()) == qubo
    assert "Minimize" in model.export_lp()


def test_optimal_route_decodes():
    inst = small_instance()
    model = stsp.build_model(inst)
    cost, route = stsp.optimal_cost(inst)
    x = [0] * model.num_variables
    for t, arc in enumerate(route, start=1):
        position = [a[0] for a in inst.arcs].index(arc)
        x[(t - 1) * inst.num_arcs + position] = 1
    objective, violated = model.evaluate(x)
    assert violated == []
    assert objective == cost
    result = stsp.decode(x, model, inst)
    assert result["feasible"]
    assert result["cost"] == cost
    assert result["route"] == route


def test_anneal_is_seeded():
    qubo = stsp.to_qubo(stsp.build_model(small_instance()))
    a = stsp.anneal(qubo, reads=10, sweeps=50, seed=3)
    b = stsp.anneal(qubo, reads=10, sweeps=50, seed=3, threads=2)
    assert a == b
    energies = [e for _, e in a]
    assert energies == sorted(energies)
    assert qubo.energy(a[0][0]) == energies[0]


def test_errors_are_python_exceptions():
    with pytest.raises(stsp.InvalidArgument):
        stsp.generate_instance(1)
    with pytest.raises(stsp.ParseError):
        stsp.Instance.load("not an instance")


def test_gap_csv():
    text = stsp.gap_csv([4, 5], [1, 2])
    lines = text.strip().split("\n")
    assert lines[0] == "V,seed,nvar_SQUBO,nvar_RQUBO,GAP"
    assert len(lines) == 5
