import pytest
from hypothesis import given
from hypothesis import strategies as st

from sei.core import InvalidInputError
from sei.registry import (
    InvalidIssnError,
    RegistryLoadError,
    issn_check_char,
    load_registry,
    lookup_channel,
    normalize_channel_name,
    normalize_issn,
    search_channels,
)

from conftest import make_issn, write_registry


class TestIssn:
    def test_real_issns_validate(self):
        for issn in ("0140-6736", "0028-4793", "1469-493X", "0041-5782"):
            assert normalize_issn(issn) == issn

    def test_hand_computed_check_character(self):
        # weights 8..2 over 1234567 give 112; 112 mod 11 = 2; 11 - 2 = 9
        assert issn_check_char("1234567") == "9"
        assert normalize_issn("1234-5679") == "1234-5679"

    def test_check_character_failure(self):
        with pytest.raises(InvalidIssnError):
            normalize_issn("1234-5670")

    def test_shape_failures(self):
        for bad in ("", "abcd-efgh", "12345-678", "1234_5679"):
            with pytest.raises(InvalidIssnError):
                normalize_issn(bad)

    def test_lowercase_x_and_missing_hyphen_are_normalized(self):
        assert normalize_issn("1469-493x") == "1469-493X"
        assert normalize_issn("14694 93X".replace(" ", "")) == "1469-493X"


class TestNormalizeChannelName:
    def test_whitespace_and_case(self):
        assert normalize_channel_name("The  Lancet ") == "the lancet"

    def test_danish_folding(self):
        assert normalize_channel_name("Ugeskrift for Læger") == "ugeskrift for laeger"
        assert normalize_channel_name("Nørre Ø-tidsskrift på Åben") == "noerre oetidsskrift paa aaben"

    def test_empty_stays_empty(self):
        assert normalize_channel_name("") == ""

    def test_diacritics_and_punctuation(self):
        assert normalize_channel_name("Révue médicale!") == "revue medicale"
        assert normalize_channel_name("J.A.M.A.") == "jama"

    @given(st.text(max_size=80))
    def test_idempotent(self, name):
        once = normalize_channel_name(name)
        assert normalize_channel_name(once) == once


class TestLoadRegistry:
    def test_three_row_file(self, tmp_path):
        path = write_registry(
            tmp_path / "r.csv",
            [
                f"{make_issn(1)},Journal One,1",
                f"{make_issn(2)},Journal Two,2",
                f"{make_issn(3)},Journal Three,3",
            ],
        )
        registry = load_registry(path)
        assert len(registry) == 3

    def test_duplicate_issn_error_names_both_lines(self, tmp_path):
        path = write_registry(
            tmp_path / "r.csv",
            ["1234-5679,Journal A,1", "1234-5679,Journal B,2"],
        )
        with pytest.raises(RegistryLoadError) as err:
            load_registry(path)
        [problem] = err.value.problems
        assert problem.code == "DUPLICATE_ISSN"
        assert problem.line == 3
        assert "line 2" in problem.message

    def test_thousand_row_generated_fixture(self, tmp_path):
        rows = [f"{make_issn(i)},Channel {i},{(i % 3) + 1}" for i in range(1000)]
        registry = load_registry(write_registry(tmp_path / "big.csv", rows))
        assert len(registry) == 1000

    def test_multiple_issns_merge_into_one_channel(self, tmp_path):
        path = write_registry(
            tmp_path / "r.csv",
            [f"{make_issn(10)},Journal X,2", f"{make_issn(11)},Journal X,2"],
        )
        registry = load_registry(path)
        assert len(registry) == 1
        assert len(registry.records[0].issns) == 2

    def test_name_collision_across_levels_is_an_error(self, tmp_path):
        path = write_registry(
            tmp_path / "r.csv",
            [f"{make_issn(10)},Journal X,2", f"{make_issn(11)},journal  X,3"],
        )
        with pytest.raises(RegistryLoadError) as err:
            load_registry(path)
        assert err.value.problems[0].code == "NAME_LEVEL_COLLISION"

    def test_invalid_level_reported_with_line(self, tmp_path):
        path = write_registry(
            tmp_path / "r.csv",
            [f"{make_issn(1)},Journal One,0", f"{make_issn(2)},Journal Two,4"],
        )
        with pytest.raises(RegistryLoadError) as err:
            load_registry(path)
        assert [p.code for p in err.value.problems] == [
            "INVALID_BFI_LEVEL",
            "INVALID_BFI_LEVEL",
        ]
        assert [p.line for p in err.value.problems] == [2, 3]

    def test_header_must_match_exactly(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("issn,name,level\n1234-5679,Journal,1\n", encoding="utf-8")
        with pytest.raises(RegistryLoadError) as err:
            load_registry(path)
        assert err.value.problems[0].code == "BAD_HEADER"

    def test_comments_and_blank_lines_are_skipped(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(
            "# authority list stand-in\n\nissn,channel_name,bfi_level\n"
            f"# a comment between rows\n{make_issn(5)},Journal Five,1\n",
            encoding="utf-8",
        )
        assert len(load_registry(path)) == 1

    def test_all_problems_collected_not_just_first(self, tmp_path):
        path = write_registry(
            tmp_path / "r.csv",
            [
                "9999-9999,Bad Check,1",
                f"{make_issn(1)},Fine,1",
                f"{make_issn(2)},Bad Level,9",
            ],
        )
        with pytest.raises(RegistryLoadError) as err:
            load_registry(path)
        assert len(err.value.problems) == 2

    def test_accepts_bytes_and_file_objects(self, tmp_path):
        content = f"issn,channel_name,bfi_level\n{make_issn(1)},Journal One,1\n"
        assert len(load_registry(content.encode("utf-8"))) == 1
        path = tmp_path / "r.csv"
        path.write_text(content, encoding="utf-8")
        with open(path, "rb") as fh:
            assert len(load_registry(fh)) == 1


class TestLookup:
    def test_issn_hit(self, corpus_registry):
        result = lookup_channel(corpus_registry, issn=make_issn(2))
        assert result.found and int(result.bfi) == 2
        assert result.matched.canonical_name == "Journal Two"

    def test_unknown_issn_scores_zero(self, corpus_registry):
        result = lookup_channel(corpus_registry, issn=make_issn(4242))
        assert not result.found
        assert int(result.bfi) == 0
        assert result.matched is None

    def test_name_is_normalized_on_both_sides(self, corpus_registry):
        result = lookup_channel(corpus_registry, name="  JOURNAL   two ")
        assert result.found and int(result.bfi) == 2

    def test_sloppy_name_matches_demo_record(self, demo_registry):
        result = lookup_channel(demo_registry, name="The  Lancet ")
        assert result.found
        assert result.matched.canonical_name == "The Lancet"

    def test_malformed_issn_query_raises(self, corpus_registry):
        with pytest.raises(InvalidIssnError):
            lookup_channel(corpus_registry, issn="not-an-issn")

    def test_requires_some_identifier(self, corpus_registry):
        with pytest.raises(InvalidInputError):
            lookup_channel(corpus_registry)

    def test_issn_takes_priority_but_name_is_fallback(self, corpus_registry):
        result = lookup_channel(corpus_registry, issn=make_issn(4242), name="Journal Three")
        assert result.found and int(result.bfi) == 3

    def test_roundtrip_every_issn_in_file_hits(self, tmp_path):
        issns = [make_issn(i) for i in range(50)]
        rows = [f"{issn},Channel {i},{(i % 3) + 1}" for i, issn in enumerate(issns)]
        registry = load_registry(write_registry(tmp_path / "r.csv", rows))
        for issn in issns:
            assert lookup_channel(registry, issn=issn).found
        for absent in (make_issn(60), make_issn(61)):
            assert not lookup_channel(registry, issn=absent).found

    def test_repeated_lookups_are_identical(self, corpus_registry):
        first = lookup_channel(corpus_registry, issn=make_issn(2))
        second = lookup_channel(corpus_registry, issn=make_issn(2))
        assert first == second


class TestSearch:
    def test_substring_search(self, demo_registry):
        names = [r.canonical_name for r in search_channels(demo_registry, "lancet")]
        assert "The Lancet" in names
        assert "The Lancet Oncology" in names

    def test_search_normalizes_query(self, demo_registry):
        assert search_channels(demo_registry, "  LÆGER ")
        assert search_channels(demo_registry, "") == []

    def test_demo_registry_loads(self, demo_registry):
        assert len(demo_registry) == 20
