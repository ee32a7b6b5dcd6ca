import random

import pytest

from beliefkit import (
    CLOSED,
    ClosestWorldMap,
    EMPTY,
    Frame,
    MassFunction,
    NoSolutionError,
    OPEN,
    PignisticDistribution,
    SpecializationMatrix,
    TransferMatrix,
    apply_specialization,
    belief,
    canonical_specialization,
    condition_closed,
    condition_geometric,
    condition_open,
    condition_yager_kohlas,
    image_closest,
    image_general,
    normalize,
    transfer_matrix_for,
)
from beliefkit.voting import (
    FRAME,
    SURVIVORS,
    reallocation_level1,
    reallocation_level2,
    reallocation_level3,
    undecided_split,
)

from helpers import mass_diff, random_frame, random_key, random_mass


class TestConditionOpen:
    def test_voting_example_masses_and_conflict(self, monday, survivors, frame):
        outcome = condition_open(monday, survivors)
        assert outcome.result.world == OPEN
        assert outcome.result.to_label_dict() == {
            (): 0.13,
            ("c",): 0.15,
            ("c", "d"): 0.5,
            ("d", "e"): 0.22,
        }
        assert outcome.conflict == pytest.approx(0.13, abs=1e-12)
        assert outcome.normalization == 1.0

    def test_voting_example_bel_pl(self, monday, survivors, frame):
        view = belief(condition_open(monday, survivors).result)
        c = frame.key_of("c")
        assert view.bel[c] == pytest.approx(0.15, abs=1e-9)
        assert view.pl[c] == pytest.approx(0.65, abs=1e-9)

    def test_conditioning_on_the_frame_changes_nothing(self, monday, frame):
        outcome = condition_open(monday, frame.full)
        assert mass_diff(outcome.result, monday) == 0.0
        assert outcome.conflict == 0.0

    def test_conditioning_on_the_empty_set_moves_all_mass_to_it(self, monday):
        outcome = condition_open(monday, EMPTY)
        assert outcome.result.mass(EMPTY) == pytest.approx(1.0)

    def test_closed_form_identities(self):
        # bel_A(B) = bel(B ∪ Ā) - bel(Ā) and pl_A(B) = pl(B ∩ A), for all B.
        rng = random.Random(23)
        for _ in range(60):
            f = random_frame(rng)
            m = random_mass(rng, f, world=rng.choice((OPEN, CLOSED)))
            retained = random_key(rng, f)
            other = f.complement(retained)
            view = belief(m)
            conditioned = belief(condition_open(m, retained).result)
            for b in f.subsets():
                expected_bel = view.bel[b | other] - view.bel[other]
                assert abs(conditioned.bel[b] - expected_bel) < 1e-12
                assert abs(conditioned.pl[b] - view.pl[b & retained]) < 1e-12

    def test_conflict_bookkeeping_is_exact(self):
        rng = random.Random(29)
        for _ in range(60):
            f = random_frame(rng)
            m = random_mass(rng, f, world=rng.choice((OPEN, CLOSED)))
            retained = random_key(rng, f)
            outcome = condition_open(m, retained)
            assert outcome.conflict == m.mass(EMPTY) + belief(m).bel[f.complement(retained)]


class TestConditionClosed:
    def test_voting_example(self, monday, survivors, frame):
        outcome = condition_closed(monday, survivors)
        view = belief(outcome.result)
        c = frame.key_of("c")
        assert view.bel[c] == pytest.approx(15 / 87, abs=1e-9)
        assert view.pl[c] == pytest.approx(65 / 87, abs=1e-9)
        assert outcome.normalization == pytest.approx(1 / 0.87, abs=1e-9)
        assert outcome.result.world == CLOSED

    def test_bayesian_case_reduces_to_ordinary_conditioning(self):
        f = Frame(("a", "b", "c", "d", "e"))
        m = MassFunction(f, {1 << i: 0.2 for i in range(5)})
        retained = f.key_of("cd")
        result = condition_closed(m, retained).result
        assert result.mass(f.key_of("c")) == pytest.approx(0.5, abs=1e-12)
        assert result.mass(f.key_of("d")) == pytest.approx(0.5, abs=1e-12)

    def test_retaining_e_leaves_certainty_on_e(self, monday, frame):
        # Only {d,e} meets {e}; its 0.22 transfers to {e} and normalizes to 1.
        outcome = condition_closed(monday, frame.key_of("e"))
        assert belief(outcome.result).bel[frame.key_of("e")] == pytest.approx(1.0, abs=1e-12)
        assert outcome.normalization == pytest.approx(1 / 0.22, abs=1e-9)

    def test_zero_plausibility_has_no_solution(self):
        f = Frame(("a", "b", "c"))
        m = MassFunction(f, {f.key_of("ab"): 1.0})
        with pytest.raises(NoSolutionError, match="pl"):
            condition_closed(m, f.key_of("c"))

    def test_equals_normalize_after_open_conditioning(self):
        rng = random.Random(31)
        for _ in range(100):
            f = random_frame(rng)
            m = random_mass(rng, f)
            retained = random_key(rng, f, nonempty=True)
            if belief(m).pl[retained] <= 1e-9:
                continue
            closed = condition_closed(m, retained).result
            recomposed = normalize(condition_open(m, retained).result)
            assert mass_diff(closed, recomposed) < 1e-12


class TestYagerKohlas:
    def test_voting_example_masses(self, monday, survivors):
        outcome = condition_yager_kohlas(monday, survivors)
        assert outcome.result.to_label_dict() == {
            ("c",): 0.15,
            ("c", "d"): 0.5,
            ("d", "e"): 0.22,
            ("c", "d", "e"): 0.13,
        }
        assert outcome.result.world == CLOSED

    def test_voting_example_plausibilities(self, monday, survivors, frame):
        view = belief(condition_yager_kohlas(monday, survivors).result)
        assert view.pl[frame.key_of("d")] == pytest.approx(0.85, abs=1e-9)
        assert view.pl[frame.key_of("c")] == pytest.approx(0.78, abs=1e-9)

    def test_without_conflict_it_matches_open_conditioning(self):
        f = Frame(("a", "b", "c"))
        m = MassFunction(f, {f.key_of("ab"): 0.4, f.key_of("b"): 0.6})
        retained = f.key_of("ab")  # bel(Ā) = bel({c}) = 0
        yk = condition_yager_kohlas(m, retained).result
        opened = condition_open(m, retained).result
        assert mass_diff(yk, opened) == 0.0

    def test_open_world_input_is_rejected(self):
        f = Frame(("a", "b"))
        m = MassFunction(f, {EMPTY: 0.1, 0b11: 0.9}, OPEN)
        with pytest.raises(ValueError, match="closed-world"):
            condition_yager_kohlas(m, 0b01)

    def test_retained_set_becomes_certain(self):
        rng = random.Random(37)
        for _ in range(60):
            f = random_frame(rng)
            m = random_mass(rng, f)
            retained = random_key(rng, f, nonempty=True)
            result = condition_yager_kohlas(m, retained).result
            assert result.world == CLOSED
            assert belief(result).bel[retained] == pytest.approx(1.0, abs=1e-12)

    def test_derived_plausibility_formula(self):
        # pl_A(B) = pl(B ∩ A) + bel(Ā) holds for non-empty B ⊆ A.
        rng = random.Random(41)
        for _ in range(60):
            f = random_frame(rng)
            m = random_mass(rng, f)
            retained = random_key(rng, f, nonempty=True)
            view = belief(m)
            stray = view.bel[f.complement(retained)]
            conditioned = belief(condition_yager_kohlas(m, retained).result)
            for b in f.subsets():
                if b == EMPTY or (b | retained) != retained:
                    continue
                assert abs(conditioned.pl[b] - (view.pl[b & retained] + stray)) < 1e-12


class TestGeometric:
    def test_voting_example_closed(self, monday, survivors, frame):
        outcome = condition_geometric(monday, survivors)
        assert outcome.result.to_label_dict() == {("d", "e"): 1.0}
        assert outcome.normalization == pytest.approx(1 / 0.22, abs=1e-9)
        view = belief(outcome.result)
        cd = frame.key_of("cd")
        assert (view.bel[cd], view.pl[cd]) == (0.0, 1.0)

    def test_voting_example_open(self, monday, survivors):
        outcome = condition_geometric(monday, survivors, OPEN)
        assert outcome.result.to_label_dict() == {(): 0.78, ("d", "e"): 0.22}
        assert outcome.conflict == pytest.approx(0.78, abs=1e-12)
        assert outcome.normalization == 1.0

    def test_mass_inside_the_retained_set_is_untouched(self):
        f = Frame(("a", "b", "c"))
        m = MassFunction(f, {f.key_of("a"): 0.3, f.key_of("ab"): 0.7})
        outcome = condition_geometric(m, f.key_of("ab"))
        assert mass_diff(outcome.result, m) == 0.0
        assert outcome.normalization == pytest.approx(1.0)

    def test_zero_belief_closed_variant_fails(self, monday, frame):
        with pytest.raises(NoSolutionError, match="bel"):
            condition_geometric(monday, frame.key_of("c"))

    def test_closed_belief_ratio_identity(self):
        # bel_A(B) = bel(B ∩ A) / bel(A) for the closed variant.
        rng = random.Random(43)
        checked = 0
        while checked < 60:
            f = random_frame(rng)
            m = random_mass(rng, f)
            retained = random_key(rng, f, nonempty=True)
            view = belief(m)
            if view.bel[retained] <= 1e-9:
                continue
            checked += 1
            conditioned = belief(condition_geometric(m, retained).result)
            for b in f.subsets():
                expected = view.bel[b & retained] / view.bel[retained]
                assert abs(conditioned.bel[b] - expected) < 1e-12


class TestSpecialization:
    def test_voting_split_masses(self, monday, frame):
        result = apply_specialization(monday, undecided_split())
        assert result.world == OPEN
        expected = {
            (): 0.13,
            ("c",): 0.22,
            ("d",): 0.325,
            ("c", "d"): 0.215,
            ("e",): 0.11,
        }
        produced = result.to_label_dict()
        assert set(produced) == set(expected)
        for labels, value in expected.items():
            assert produced[labels] == pytest.approx(value, abs=1e-12)
        assert belief(result).bel[frame.key_of("cd")] == pytest.approx(0.76, abs=1e-9)

    def test_identity_matrix_changes_nothing(self, monday, frame):
        identity = SpecializationMatrix(frame, {})
        assert mass_diff(apply_specialization(monday, identity), monday) == 0.0

    def test_canonical_dempster_matches_open_conditioning(self, monday, survivors):
        matrix = canonical_specialization("dempster", survivors, FRAME)
        specialized = apply_specialization(monday, matrix)
        opened = condition_open(monday, survivors).result
        assert mass_diff(specialized, opened) < 1e-12

    def test_canonical_geometric_matches_open_geometric(self, monday, survivors):
        matrix = canonical_specialization("geometric", survivors, FRAME)
        specialized = apply_specialization(monday, matrix)
        geometric = condition_geometric(monday, survivors, OPEN).result
        assert mass_diff(specialized, geometric) < 1e-12

    def test_canonical_dempster_on_the_frame_is_identity(self, frame):
        matrix = canonical_specialization("dempster", frame.full, frame)
        assert not matrix.rows

    def test_canonical_dempster_row_decomposition(self, survivors, frame):
        matrix = canonical_specialization("dempster", survivors, frame)
        source = frame.key_of("abc")
        assert dict(matrix.row(source)) == {frame.key_of("c"): 1.0}

    def test_mass_is_preserved_and_flows_downward_only(self):
        rng = random.Random(47)
        for _ in range(60):
            f = random_frame(rng)
            m = random_mass(rng, f)
            retained = random_key(rng, f)
            matrix = canonical_specialization(rng.choice(("dempster", "geometric")), retained, f)
            result = apply_specialization(m, matrix)
            assert sum(result.masses.values()) == pytest.approx(1.0, abs=1e-12)
            for key in result.masses:
                assert any(
                    (key | source) == source and matrix.row(source).get(key)
                    for source in m.masses
                )

    def test_frame_mismatch_rejected(self, monday):
        other = Frame(("x", "y"))
        with pytest.raises(ValueError, match="frame"):
            apply_specialization(monday, SpecializationMatrix(other, {}))

    def test_row_validation(self, frame):
        ab, a, c = frame.key_of("ab"), frame.key_of("a"), frame.key_of("c")
        with pytest.raises(ValueError, match="not a subset"):
            SpecializationMatrix(frame, {ab: {c: 1.0}})
        with pytest.raises(ValueError, match="negative coefficient"):
            SpecializationMatrix(frame, {ab: {a: -0.5, ab: 1.5}})
        with pytest.raises(ValueError, match="sum to"):
            SpecializationMatrix(frame, {ab: {a: 0.5, ab: 0.4}})
        # a row within 1e-9 of stochastic is accepted and rescaled
        third = 0.333333333
        matrix = SpecializationMatrix(frame, {ab: {a: third, ab: 2 * third}})
        assert sum(matrix.row(ab).values()) == pytest.approx(1.0, abs=1e-15)


class TestImaging:
    def test_closest_world_transfer_of_a_uniform_distribution(self, frame, survivors):
        cmap = ClosestWorldMap.from_labels(frame, ("c", "d", "e"), {"a": "c", "b": "c"})
        uniform = PignisticDistribution(frame, (0.2,) * 5)
        moved = image_closest(uniform, cmap)
        assert moved.by_label() == pytest.approx(
            {"a": 0.0, "b": 0.0, "c": 0.6, "d": 0.2, "e": 0.2}
        )

    def test_distribution_already_inside_is_unchanged(self, frame):
        cmap = ClosestWorldMap.from_labels(frame, ("c", "d", "e"), {"a": "c", "b": "c"})
        p = PignisticDistribution(frame, (0.0, 0.0, 0.5, 0.25, 0.25))
        assert image_closest(p, cmap).prob == p.prob

    def test_point_mass_moves_to_its_closest_world(self, frame):
        cmap = ClosestWorldMap.from_labels(frame, ("c", "d", "e"), {"a": "c", "b": "d"})
        p = PignisticDistribution(frame, (1.0, 0.0, 0.0, 0.0, 0.0))
        assert image_closest(p, cmap).by_label()["c"] == 1.0

    def test_map_validation(self, frame):
        with pytest.raises(ValueError, match="no closest world"):
            ClosestWorldMap.from_labels(frame, ("c", "d", "e"), {"a": "c"})
        with pytest.raises(ValueError, match="not in the retained set"):
            ClosestWorldMap.from_labels(frame, ("c", "d", "e"), {"a": "b", "b": "c"})
        with pytest.raises(ValueError, match="retained and cannot move"):
            ClosestWorldMap.from_labels(
                frame, ("c", "d", "e"), {"a": "c", "b": "c", "d": "c"}
            )

    def test_level1_reallocation(self, monday, frame):
        result = image_general(monday, reallocation_level1())
        assert result.to_label_dict() == {
            ("c",): 0.28,
            ("c", "d"): 0.5,
            ("d", "e"): 0.22,
        }
        view = belief(result)
        c = frame.key_of("c")
        assert view.bel[c] == pytest.approx(0.28, abs=1e-9)
        assert view.pl[c] == pytest.approx(0.78, abs=1e-9)

    def test_level2_reallocation(self, monday, frame):
        view = belief(image_general(monday, reallocation_level2()))
        assert view.bel[frame.key_of("c")] == pytest.approx(0.202, abs=1e-9)
        assert view.pl[frame.key_of("d")] == pytest.approx(0.798, abs=1e-9)

    def test_level3_reallocation(self, monday, frame):
        view = belief(image_general(monday, reallocation_level3()))
        assert view.bel[frame.key_of("c")] == pytest.approx(0.21, abs=1e-9)
        assert view.pl[frame.key_of("d")] == pytest.approx(0.77, abs=1e-9)
        assert view.bel[frame.key_of("cd")] == pytest.approx(0.76, abs=1e-9)

    def test_total_mass_is_preserved(self):
        rng = random.Random(53)
        for _ in range(40):
            f = random_frame(rng)
            m = random_mass(rng, f)
            rows = {}
            for source in f.subsets():
                if rng.random() < 0.5:
                    continue
                dests = rng.sample(range(f.num_subsets), rng.randint(1, min(3, f.num_subsets)))
                weights = [rng.random() + 0.1 for _ in dests]
                total = sum(weights)
                rows[source] = {d: w / total for d, w in zip(dests, weights)}
            result = image_general(m, TransferMatrix(f, rows))
            assert sum(result.masses.values()) == pytest.approx(1.0, abs=1e-12)


class TestTransferMatrixFor:
    def test_dempster_open_route(self, monday, survivors):
        matrix = transfer_matrix_for("dempster_open", survivors, FRAME)
        imaged = image_general(monday, matrix)
        opened = condition_open(monday, survivors).result
        assert mass_diff(imaged, opened) < 1e-12

    def test_yager_kohlas_route(self, monday, survivors):
        matrix = transfer_matrix_for("yager_kohlas", survivors, FRAME)
        imaged = image_general(monday, matrix)
        dedicated = condition_yager_kohlas(monday, survivors).result
        assert mass_diff(imaged, dedicated) < 1e-12

    def test_dempster_open_on_the_frame_is_identity(self, frame):
        matrix = transfer_matrix_for("dempster_open", frame.full, frame)
        assert not matrix.rows

    def test_specialization_route(self, monday):
        matrix = transfer_matrix_for("specialization", specialization=undecided_split())
        imaged = image_general(monday, matrix)
        specialized = apply_specialization(monday, undecided_split())
        assert mass_diff(imaged, specialized) < 1e-12

    def test_closest_route_reproduces_lewis_imaging(self, frame):
        cmap = ClosestWorldMap.from_labels(frame, ("c", "d", "e"), {"a": "c", "b": "d"})
        matrix = transfer_matrix_for("closest", closest=cmap)
        p = PignisticDistribution(frame, (0.1, 0.2, 0.3, 0.25, 0.15))
        bayesian = MassFunction(frame, {1 << i: v for i, v in enumerate(p.prob) if v})
        imaged = image_general(bayesian, matrix)
        moved = image_closest(p, cmap)
        for i in range(frame.n):
            assert imaged.mass(1 << i) == pytest.approx(moved.prob[i], abs=1e-12)

    def test_unknown_rule_rejected(self, frame):
        with pytest.raises(ValueError, match="unknown transfer rule"):
            transfer_matrix_for("marginalize", frame.full, frame)


class TestOutcomeInvariants:
    def test_normalization_constant_is_at_least_one(self):
        rng = random.Random(59)
        for _ in range(80):
            f = random_frame(rng)
            m = random_mass(rng, f)
            retained = random_key(rng, f, nonempty=True)
            view = belief(m)
            outcomes = [condition_open(m, retained), condition_yager_kohlas(m, retained)]
            if view.pl[retained] > 1e-9:
                outcomes.append(condition_closed(m, retained))
            if view.bel[retained] > 1e-9:
                outcomes.append(condition_geometric(m, retained))
            outcomes.append(condition_geometric(m, retained, OPEN))
            for outcome in outcomes:
                assert outcome.normalization >= 1.0 - 1e-12
