"""Property-based checks of the scoring rules against independent oracles."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sei.core import (
    AssessmentDraft,
    AssessmentInvalid,
    EvidenceLevel,
    SpecialRemark,
    aggregate_evidence,
    classify_experience,
    compute_h_index,
    validate_assessment,
)

from oracles import evidence_oracle, experience_oracle, h_index_oracle

citation_lists = st.lists(st.integers(min_value=0, max_value=10_000), max_size=200)
h_values = st.integers(min_value=0, max_value=10_000)
bfi_values = st.integers(min_value=0, max_value=3)
rank_values = st.integers(min_value=1, max_value=7)


class TestHIndexProperties:
    @given(citations=citation_lists)
    def test_matches_enumeration_oracle(self, citations):
        assert compute_h_index(citations) == h_index_oracle(citations)

    @given(citations=citation_lists)
    def test_bounds(self, citations):
        h = compute_h_index(citations)
        assert 0 <= h <= len(citations)
        assert h <= max(citations, default=0)

    @given(citations=citation_lists, extra=st.integers(min_value=0, max_value=10_000))
    def test_appending_never_decreases(self, citations, extra):
        assert compute_h_index(citations + [extra]) >= compute_h_index(citations)

    @given(citations=st.lists(st.integers(min_value=0, max_value=10_000), min_size=1, max_size=200), data=st.data())
    def test_incrementing_never_decreases(self, citations, data):
        i = data.draw(st.integers(min_value=0, max_value=len(citations) - 1))
        bumped = list(citations)
        bumped[i] += 1
        assert compute_h_index(bumped) >= compute_h_index(citations)

    @given(citations=citation_lists, data=st.data())
    def test_permutation_invariance(self, citations, data):
        shuffled = data.draw(st.permutations(citations))
        assert compute_h_index(shuffled) == compute_h_index(citations)


class TestExperienceProperties:
    @given(h=h_values)
    def test_matches_oracle_and_is_total(self, h):
        assert classify_experience(h).token == experience_oracle(h)

    @given(h=st.integers(min_value=0, max_value=9_999))
    def test_monotone_nondecreasing(self, h):
        assert classify_experience(h + 1) >= classify_experience(h)


class TestAggregateProperties:
    @given(bfi=bfi_values, rank=rank_values, h=h_values)
    def test_matches_bullet_oracle(self, bfi, rank, h):
        assert aggregate_evidence(bfi, rank, h).token == evidence_oracle(bfi, rank, h)

    @given(bfi=bfi_values, rank=rank_values, h=h_values)
    def test_low_iff_bfi_zero(self, bfi, rank, h):
        assert (aggregate_evidence(bfi, rank, h) is EvidenceLevel.LOW) == (bfi == 0)

    @given(bfi=bfi_values, rank=rank_values, h=h_values)
    def test_high_iff_all_three_criteria(self, bfi, rank, h):
        is_high = aggregate_evidence(bfi, rank, h) is EvidenceLevel.HIGH
        assert is_high == (bfi >= 2 and rank <= 2 and h > 20)

    @given(bfi=st.integers(min_value=0, max_value=2), rank=rank_values, h=h_values)
    def test_raising_bfi_never_lowers(self, bfi, rank, h):
        assert aggregate_evidence(bfi + 1, rank, h) >= aggregate_evidence(bfi, rank, h)

    @given(bfi=bfi_values, rank=st.integers(min_value=2, max_value=7), h=h_values)
    def test_strengthening_method_never_lowers(self, bfi, rank, h):
        assert aggregate_evidence(bfi, rank - 1, h) >= aggregate_evidence(bfi, rank, h)

    @given(bfi=bfi_values, rank=rank_values, h=h_values, bump=st.integers(min_value=1, max_value=200))
    def test_raising_h_never_lowers(self, bfi, rank, h, bump):
        assert aggregate_evidence(bfi, rank, h + bump) >= aggregate_evidence(bfi, rank, h)


class TestValidationCoherence:
    @given(
        bfi=bfi_values,
        rank=rank_values,
        h=h_values,
        with_remark=st.booleans(),
    )
    @settings(max_examples=300)
    def test_accepted_assessments_have_coherent_derived_fields(
        self, bfi, rank, h, with_remark
    ):
        remarks = [SpecialRemark("caveat")] if with_remark else []
        draft = AssessmentDraft(bfi=bfi, method_rank=rank, team_max_h=h, remarks=remarks)
        try:
            assessment = validate_assessment(draft)
        except AssessmentInvalid as exc:
            # The only rejection possible here is the mandatory remark rule.
            assert bfi == 0 and not with_remark
            assert exc.codes() == ["MISSING_REMARK_FOR_UNREVIEWED"]
            return
        assert assessment.evidence == aggregate_evidence(bfi, rank, h)
        assert assessment.experience == classify_experience(h)
        assert assessment.team_max_h == h
