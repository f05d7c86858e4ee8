import math

import pytest

import spinbeam


def test_builtins_listed():
    assert "thor-like" in spinbeam.builtin_scenarios()


def test_classical_cantilever():
    r = spinbeam.cantilever_ratios(0.0)
    assert r["in_plane"][0] == pytest.approx(3.5160, rel=5e-4)
    assert r["traction"] == pytest.approx(math.sqrt(3.0), abs=1e-6)


def test_table_csv():
    text = spinbeam.table("T1")
    header, first = text.splitlines()[:2]
    assert header.startswith("eta,In-plane bending 1st")
    assert float(first.split(",")[1]) == pytest.approx(3.5160, rel=5e-4)
    assert text == spinbeam.table("T1")


def test_static_gain():
    w, g = spinbeam.freqresp("thor-like", grid="log:1e-6:1e-5:2")
    assert len(w) == 2
    jyy = 570.42 + 2 * (2700 * 3.14e-4 * (52**3 - 2**3) / 3 + 5 * 52**2)
    assert abs(g[0]) == pytest.approx(1 / jyy, rel=1e-6)


def test_modes_and_run(tmp_path):
    m = spinbeam.modes("thor-like", omega=0.5)
    assert len(m) > 0
    assert all(x["frequency"] >= 0 for x in m)
    files = spinbeam.run("thor-like", str(tmp_path))
    assert any(f.endswith("_modal.json") for f in files)


def test_errors_map_to_python():
    with pytest.raises(spinbeam.SchemaError):
        spinbeam.table("T9")
    with pytest.raises(spinbeam.ModelInvalid):
        spinbeam.modes("thor-like", omega=200.0)
