"""JSON spec parsing, result serialization, and the positivity gate."""

import json
from fractions import Fraction
from math import inf

import pytest

from cuntzlab import (
    GateFailed,
    QQi,
    SchemaError,
    monomial,
    parse_spec,
    rep_from_spec,
    state_from_spec,
)
from cuntzlab.shiftrep import GridRepresentation, ShiftRepresentation
from cuntzlab.specio import (
    certificate_to_json,
    dump_json,
    element_from_json,
    element_to_json,
    epword_from_json,
    epword_to_json,
    scalar_from_json,
    scalar_to_json,
    value_to_json,
    word_from_json,
)

from conftest import fr, q


class TestScalarParsing:
    def test_bare_integers_and_fraction_strings(self):
        assert scalar_from_json(1, "exact", "t") == QQi(1, 0)
        assert scalar_from_json("3/5", "exact", "t") == QQi(fr(3, 5), 0)

    def test_pairs(self):
        assert scalar_from_json(["3/5", "4/5"], "exact", "t") == QQi(fr(3, 5), fr(4, 5))
        assert scalar_from_json([0, 1], "exact", "t") == QQi(0, 1)

    def test_integral_floats_accepted_exactly(self):
        assert scalar_from_json(1.0, "exact", "t") == QQi(1, 0)

    def test_inexact_float_needs_the_flag(self):
        with pytest.raises(SchemaError) as e:
            scalar_from_json(0.6, "exact", "z[0]")
        assert "exact mode" in str(e.value)
        assert scalar_from_json(0.6, "float", "z[0]") == 0.6

    def test_auto_mode_points_at_the_flag(self):
        with pytest.raises(SchemaError) as e:
            scalar_from_json(0.6, "auto", "t")
        assert "--mode float" in str(e.value)

    def test_garbage_rejected(self):
        with pytest.raises(SchemaError):
            scalar_from_json("3/5/7", "exact", "t")
        with pytest.raises(SchemaError):
            scalar_from_json({"re": 1}, "exact", "t")


class TestScalarSerialization:
    def test_round_trip_exact(self):
        for z in [QQi(1, 0), QQi(fr(3, 5), fr(-4, 5)), QQi(0, 1), fr(1, 3), 7]:
            out = scalar_to_json(z)
            back = scalar_from_json(out, "exact", "t")
            assert back == QQi(z) if not isinstance(z, QQi) else back == z

    def test_integers_stay_integers(self):
        assert scalar_to_json(QQi(2, 0)) == [2, 0]
        assert scalar_to_json(QQi(fr(1, 2), 0)) == ["1/2", 0]

    def test_floats_round_trip_through_float_mode(self):
        out = scalar_to_json(0.6 + 0.25j)
        back = scalar_from_json(out, "float", "t")
        assert abs(back - (0.6 + 0.25j)) < 1e-9


class TestWordSerialization:
    def test_word_from_json(self):
        assert word_from_json([1, 2, 1], "t") == (1, 2, 1)
        assert word_from_json([], "t") == ()
        with pytest.raises(SchemaError):
            word_from_json("12", "t")

    def test_epword_round_trip(self):
        w = epword_from_json({"pre": [1], "per": [1, 2]}, 2, "t")
        assert (w.pre, w.per) == ((1,), (1, 2))
        assert epword_to_json(w) == {"pre": [1], "per": [1, 2]}

    def test_epword_canonicalizes(self):
        w = epword_from_json({"pre": [1, 2], "per": [2]}, 2, "t")
        assert (w.pre, w.per) == ((1,), (2,))


class TestElementSerialization:
    def test_round_trip(self):
        x = monomial(2, (1, 2), (2, 1), QQi(fr(1, 2), fr(1, 3)))
        out = element_to_json(x)
        back = element_from_json(out, "exact", "t")
        assert back == x

    def test_terms_sorted_canonically(self):
        x = monomial(2, (2,), ()) + monomial(2, (1,), ())
        out = element_to_json(x)
        assert [t["J"] for t in out["terms"]] == [[1], [2]]


class TestStateSpecs:
    CASES = [
        ({"family": "cuntz", "z": [["3/5", 0], ["4/5", 0]]}, "cuntz"),
        ({"family": "sub_cuntz", "m": 2, "n": 2, "z": [0, 1, 0, 0]}, "sub_cuntz"),
        (
            {"family": "geometric_progression", "k": 2, "n": 2, "z": ["3/5", 0, "4/5"]},
            "geometric_progression",
        ),
        ({"family": "prefix_code", "n": 2, "code": [[1, 2]], "z": [1]}, "prefix_code"),
        (
            {"family": "induced_product", "n": 2, "rep": [[["3/5", 0], ["4/5", 0]], [0, 1]]},
            "induced_product",
        ),
        ({"family": "shift", "n": 2, "word": {"pre": [1], "per": [1, 2]}}, "shift"),
        (
            {"family": "vector", "rep": {"kind": "grid", "n": 2}, "key": [1, 0]},
            "grid",
        ),
        (
            {
                "family": "sandwich",
                "base": {"family": "cuntz", "z": [1, 0]},
                "terms": [[1, {"n": 2, "terms": [{"J": [2], "K": [], "re": 1, "im": 0}]}]],
            },
            "sandwich",
        ),
        ({"family": "sandwich_series"}, "sandwich_series"),
        (
            {
                "family": "gauge",
                "base": {"family": "cuntz", "z": [1, 0]},
                "g": [[0, 1], [1, 0]],
            },
            "gauge",
        ),
        (
            {
                "family": "mixture",
                "components": [
                    {"family": "cuntz", "z": [1, 0]},
                    {"family": "cuntz", "z": [0, 1]},
                ],
                "weights": ["1/2", "1/2"],
            },
            "mixture",
        ),
    ]

    @pytest.mark.parametrize("obj,family", CASES, ids=[c[0]["family"] for c in CASES])
    def test_families_construct(self, obj, family):
        w = state_from_spec(obj)
        assert w.family == family
        assert w.moment((), ()) == 1

    def test_construction_errors_become_schema_errors(self):
        with pytest.raises(SchemaError) as e:
            state_from_spec({"family": "cuntz", "z": [1, 1]})
        assert "squared norm 2" in str(e.value)

    def test_missing_field(self):
        with pytest.raises(SchemaError) as e:
            state_from_spec({"family": "cuntz"})
        assert '"z"' in str(e.value)

    def test_unknown_family(self):
        with pytest.raises(SchemaError):
            state_from_spec({"family": "nope"})

    def test_user_equivalence_on_sandwich(self):
        w = state_from_spec(
            {
                "family": "sandwich",
                "base": {"family": "cuntz", "z": [1, 0]},
                "terms": [[1, {"n": 2, "terms": [{"J": [2], "K": [], "re": 1, "im": 0}]}]],
                "equivalent_to_cuntz": [1, 0],
            }
        )
        assert w.equivalent_to_cuntz == (1, 0)


class TestRepSpecs:
    def test_grid(self):
        rep = rep_from_spec({"kind": "grid", "n": 2})
        assert isinstance(rep, GridRepresentation)

    def test_shift(self):
        rep = rep_from_spec({"kind": "shift", "word": {"pre": [], "per": [1, 2]}, "n": 2})
        assert isinstance(rep, ShiftRepresentation)

    def test_shift_alphabet_inferred(self):
        rep = rep_from_spec({"kind": "shift", "word": {"pre": [], "per": [1, 2]}})
        assert rep.word.n == 2

    def test_lazy(self):
        rep = rep_from_spec({"kind": "lazy", "preset": "thue_morse", "n": 2, "horizon": 64})
        assert isinstance(rep, ShiftRepresentation)

    def test_unknown_kind(self):
        with pytest.raises(SchemaError):
            rep_from_spec({"kind": "torus"})


class TestParseSpec:
    def test_state_file(self, spec_file):
        w = parse_spec(spec_file({"family": "cuntz", "z": [["3/5", 0], ["4/5", 0]]}))
        assert w.family == "cuntz"

    def test_rep_file(self, spec_file):
        rep = parse_spec(spec_file({"kind": "grid", "n": 2}))
        assert isinstance(rep, GridRepresentation)

    def test_missing_file(self):
        with pytest.raises(SchemaError) as e:
            parse_spec("/nonexistent/spec.json")
        assert "cannot read" in str(e.value)

    def test_invalid_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{nope")
        with pytest.raises(SchemaError) as e:
            parse_spec(str(p))
        assert "not valid JSON" in str(e.value)

    def test_non_object_top_level(self, tmp_path):
        p = tmp_path / "arr.json"
        p.write_text("[1, 2]")
        with pytest.raises(SchemaError):
            parse_spec(str(p))

    def test_bad_norm_surfaces_cleanly(self, spec_file):
        with pytest.raises(SchemaError) as e:
            parse_spec(spec_file({"family": "cuntz", "z": [1, 1]}))
        assert "state spec (cuntz)" in str(e.value)

    def test_positivity_gate_fires_on_rigged_functional(self, spec_file, monkeypatch):
        # every built-in constructor is positive by construction, so rig one:
        # a fake functional whose level-2 moment matrix has a negative block
        import cuntzlab.specio as specio

        class Rigged:
            n = 2
            exact = True
            family = "cuntz"

            def moment(self, J, K):
                if J == K and len(J) == 1:
                    return -1  # diagonal Gram entry < 0
                if J == K:
                    return 1
                return 0

        monkeypatch.setattr(specio, "state_from_spec", lambda *a, **k: Rigged())
        with pytest.raises(GateFailed) as e:
            parse_spec(spec_file({"family": "cuntz", "z": [1, 0]}))
        assert "not positive semidefinite" in str(e.value)

    def test_gate_can_be_disabled(self, spec_file, monkeypatch):
        import cuntzlab.specio as specio

        class Rigged:
            n = 2
            exact = True
            family = "cuntz"

            def moment(self, J, K):
                return -1 if (J == K and len(J) == 1) else (1 if J == K else 0)

        monkeypatch.setattr(specio, "state_from_spec", lambda *a, **k: Rigged())
        out = parse_spec(spec_file({"family": "cuntz", "z": [1, 0]}), gate=False)
        assert out.moment((1,), (1,)) == -1


class TestResultSerialization:
    def test_values(self):
        assert value_to_json(2) == 2
        assert value_to_json(inf) == "infinite"
        assert value_to_json(None) is None

    def test_certificates(self):
        from cuntzlab import (
            EquivalentToCuntz,
            LowerBoundOnly,
            Minimal,
            ProperlyInfinite,
            ShiftPeriod,
        )

        out = certificate_to_json(Minimal(u=monomial(2, (1, 2))))
        assert out["certificate"] == "minimal"
        assert out["u"]["terms"][0]["J"] == [1, 2]

        out = certificate_to_json(ShiftPeriod(d=3))
        assert out == {"certificate": "shift_period", "d": 3}

        out = certificate_to_json(
            EquivalentToCuntz(z=(QQi(1), QQi(0)), provenance="user")
        )
        assert out["certificate"] == "equivalent_to_cuntz"
        assert out["provenance"] == "user"

        out = certificate_to_json(LowerBoundOnly(1, 2, level=2, note="n"))
        assert out["certificate"] == "lower_bound_only"
        assert out["interval"] == [1, 2]

        out = certificate_to_json(ProperlyInfinite(a=None, cutoff=12, status="proved"))
        assert out["certificate"] == "properly_infinite"
        assert out["status"] == "proved"

    def test_dump_preserves_order_and_rejects_nan(self):
        s = dump_json({"b": 1, "a": [2]})
        assert json.loads(s) == {"b": 1, "a": [2]}
        assert s.index('"b"') < s.index('"a"')  # insertion order kept
        with pytest.raises(ValueError):
            dump_json({"x": float("nan")})
