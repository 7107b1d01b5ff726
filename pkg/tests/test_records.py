import json

from hypothesis import given, settings
from hypothesis import strategies as st

from conjcrypt import __version__
from conjcrypt.records import COLUMNS, ExperimentRecord, read_csv, to_csv, to_json


def test_abs_err_computed():
    r = ExperimentRecord("x", 7, 0.5, 0.25, k=2)
    assert r.abs_err == 0.25 and r.wall_ms == 0.0


def test_csv_layout():
    text = to_csv([ExperimentRecord("x", 7, 1.0, 1.0, k=3)], "distance --k 3")
    lines = text.split("\n")
    assert lines[0] == f"# conjcrypt {__version__} | distance --k 3"
    assert lines[1] == ",".join(COLUMNS)
    assert lines[2] == "x,3,,,,,7,,1.0,1.0,0.0,0.0"
    assert "\r" not in text


def test_json_layout():
    doc = json.loads(to_json([ExperimentRecord("x", 7, 1.0)], "cmd"))
    assert doc["columns"] == list(COLUMNS)
    assert doc["records"][0]["seed"] == 7 and doc["records"][0]["analytic"] is None


@settings(max_examples=50)
@given(
    st.floats(allow_nan=False, allow_infinity=False),
    st.one_of(st.none(), st.floats(-1e6, 1e6)),
    st.integers(0, 2**64 - 1),
    st.one_of(st.none(), st.integers(1, 64)),
)
def test_csv_round_trip_lossless(observed, analytic, seed, k):
    rec = ExperimentRecord("e", seed, observed, analytic, k=k)
    row = read_csv(to_csv([rec]))[0]
    assert float(row["observed"]) == rec.observed
    assert int(row["seed"]) == seed
    assert (row["analytic"] == "") == (analytic is None)
    if analytic is not None:
        assert float(row["analytic"]) == rec.analytic
        assert float(row["abs_err"]) == rec.abs_err
    assert row["k"] == ("" if k is None else str(k))
