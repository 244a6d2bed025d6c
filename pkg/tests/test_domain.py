import numpy as np
import pytest

from typetaste import domain
from typetaste.domain import (
    ALL_TYPES,
    CATEGORY_ORDER,
    CATEGORY_SIZES,
    Dataset,
    GenreCatalog,
    MbtiType,
    SurveyRecord,
    default_catalog,
    is_enjoyment,
    load_catalog,
    parse_mbti,
    rating_meaning,
    save_catalog,
)
from typetaste.errors import (
    CatalogError,
    DuplicateRespondent,
    InvalidMbtiCode,
    InvalidRating,
    SchemaMismatch,
    UnknownGenre,
)


class TestMbtiType:
    def test_sixteen_unique_types(self):
        assert len(ALL_TYPES) == 16
        assert len(set(ALL_TYPES)) == 16
        assert [t.value for t in ALL_TYPES] == sorted(t.value for t in ALL_TYPES)

    def test_types_cover_all_letter_combinations(self):
        combos = {
            (t.attitude, t.information, t.decision, t.lifestyle) for t in ALL_TYPES
        }
        assert len(combos) == 16
        assert {c[0] for c in combos} == {"i", "e"}
        assert {c[1] for c in combos} == {"n", "s"}
        assert {c[2] for c in combos} == {"t", "f"}
        assert {c[3] for c in combos} == {"j", "p"}

    def test_str_is_lowercase_code(self):
        assert str(MbtiType.INTP) == "intp"
        assert f"{MbtiType.ENFJ}" == "enfj"
        assert MbtiType.ISTJ.code == "istj"

    def test_is_introvert(self):
        assert MbtiType.INTP.is_introvert
        assert MbtiType.ISFJ.is_introvert
        assert not MbtiType.ENTP.is_introvert
        assert sum(t.is_introvert for t in ALL_TYPES) == 8

    @pytest.mark.parametrize("text", ["intp", "INTP", "Intp", "iNtP"])
    def test_parse_case_insensitive(self, text):
        assert parse_mbti(text) is MbtiType.INTP

    def test_parse_roundtrips_every_code(self):
        for t in ALL_TYPES:
            assert parse_mbti(t.value) is t
            assert parse_mbti(t.value.upper()) is t

    def test_parse_accepts_member(self):
        assert parse_mbti(MbtiType.INFJ) is MbtiType.INFJ

    @pytest.mark.parametrize("text", ["", "int", "intx", "intpp", " intp", "abcd", 4])
    def test_parse_rejects_invalid(self, text):
        with pytest.raises(InvalidMbtiCode):
            parse_mbti(text)


class TestRatingScale:
    def test_meanings(self):
        assert rating_meaning(0) == "No Experience"
        assert rating_meaning(1) == "Dislike strongly"
        assert rating_meaning(2) == "Dislike"
        assert rating_meaning(3) == "Neutral/No opinion"
        assert rating_meaning(4) == "Mild enjoyment"
        assert rating_meaning(5) == "Reasonably enjoyable"
        assert rating_meaning(6) == "Highly enjoyable"

    def test_enjoyment_threshold(self):
        assert [is_enjoyment(r) for r in range(7)] == [
            False, False, False, False, True, True, True,
        ]

    def test_numpy_integers_accepted(self):
        assert is_enjoyment(np.int64(5))
        assert rating_meaning(np.int32(0)) == "No Experience"

    @pytest.mark.parametrize("value", [-1, 7, 100, 3.5, "3", None])
    def test_invalid_ratings_rejected(self, value):
        with pytest.raises(InvalidRating):
            rating_meaning(value)
        with pytest.raises(InvalidRating):
            is_enjoyment(value)


class TestGenreCatalog:
    def test_default_catalog_shape(self):
        cat = default_catalog()
        assert len(cat) == 121
        assert cat.category_names == CATEGORY_ORDER
        for name, genres in cat.categories:
            assert len(genres) == CATEGORY_SIZES[name]
        sizes = [len(genres) for _, genres in cat.categories]
        assert sizes == [30, 34, 25, 21, 11]

    def test_default_catalog_named_genres(self):
        cat = default_catalog()
        assert "Psychology" in cat
        assert "Religion & Spirituality" in cat
        assert cat.category_of("Psychology") == "nonfiction-books"
        assert cat.category_of("Religion & Spirituality") == "nonfiction-books"

    def test_genre_names_unique(self):
        cat = default_catalog()
        assert len(set(cat.genres)) == len(cat.genres)

    def test_index_and_slices_agree(self):
        cat = default_catalog()
        for name in cat.category_names:
            sl = cat.category_slice(name)
            for genre in cat.genres_in(name):
                assert sl.start <= cat.index(genre) < sl.stop
                assert cat.category_of(genre) == name
        # slices tile the full column range
        stops = [cat.category_slice(n) for n in cat.category_names]
        assert stops[0].start == 0
        assert stops[-1].stop == len(cat)
        for left, right in zip(stops, stops[1:]):
            assert left.stop == right.start

    def test_unknown_genre_raises(self):
        cat = default_catalog()
        with pytest.raises(UnknownGenre):
            cat.index("No Such Genre")
        with pytest.raises(UnknownGenre):
            cat.category_of("No Such Genre")

    def test_unknown_category_raises(self):
        with pytest.raises(CatalogError):
            default_catalog().category_slice("poetry")

    def test_wrong_category_order_rejected(self):
        cat = default_catalog()
        backwards = tuple(reversed(cat.categories))
        with pytest.raises(CatalogError):
            GenreCatalog(backwards)

    def test_wrong_category_size_rejected(self):
        cat = default_catalog()
        broken = list(cat.categories)
        name, genres = broken[2]
        broken[2] = (name, genres[:-1])
        with pytest.raises(CatalogError):
            GenreCatalog(tuple(broken))

    def test_duplicate_genres_rejected(self):
        cat = default_catalog()
        broken = list(cat.categories)
        name, genres = broken[0]
        broken[0] = (name, ("Psychology",) + genres[1:])
        with pytest.raises(CatalogError):
            GenreCatalog(tuple(broken))

    def test_csv_roundtrip(self, tmp_path):
        cat = default_catalog()
        path = tmp_path / "catalog.csv"
        save_catalog(cat, path)
        assert load_catalog(path) == cat

    def test_csv_roundtrip_with_awkward_names(self, tmp_path):
        cat = default_catalog()
        groups = []
        for name, genres in cat.categories:
            if name == "music":
                genres = ('Jazz, Swing & "Big Band"',) + genres[1:]
            groups.append((name, genres))
        awkward = GenreCatalog(tuple(groups))
        path = tmp_path / "catalog.csv"
        save_catalog(awkward, path)
        assert load_catalog(path) == awkward

    def test_load_rejects_bad_header(self, tmp_path):
        path = tmp_path / "catalog.csv"
        path.write_text("genre,category\nx,y\n")
        with pytest.raises(SchemaMismatch):
            load_catalog(path)


def _record(rid="r-1", mbti="intp", width=121, fill=3):
    return SurveyRecord(rid, mbti, (fill,) * width)


class TestSurveyRecord:
    def test_coerces_mbti_and_ratings(self):
        rec = SurveyRecord("a-1", "INTP", [0, 6, 3])
        assert rec.mbti is MbtiType.INTP
        assert rec.ratings == (0, 6, 3)

    def test_rejects_out_of_range_rating(self):
        with pytest.raises(InvalidRating):
            SurveyRecord("a-1", "intp", (0, 7))

    def test_rejects_bad_type(self):
        with pytest.raises(InvalidMbtiCode):
            SurveyRecord("a-1", "nope", (0,))

    def test_rejects_empty_id(self):
        with pytest.raises(SchemaMismatch):
            SurveyRecord("", "intp", (0,))

    def test_rating_for(self):
        cat = default_catalog()
        ratings = [0] * 121
        ratings[cat.index("Psychology")] = 6
        rec = SurveyRecord("a-1", "intp", ratings)
        assert rec.rating_for(cat, "Psychology") == 6


class TestDataset:
    def test_basic_accessors(self):
        cat = default_catalog()
        ds = Dataset(cat, (_record("a-1"), _record("b-2", "enfj", fill=5)))
        assert len(ds) == 2
        assert ds.respondent_ids == ("a-1", "b-2")
        assert ds.types == (MbtiType.INTP, MbtiType.ENFJ)
        assert ds.record("b-2").mbti is MbtiType.ENFJ
        with pytest.raises(SchemaMismatch):
            ds.record("missing")

    def test_duplicate_ids_rejected(self):
        cat = default_catalog()
        with pytest.raises(DuplicateRespondent):
            Dataset(cat, (_record("a-1"), _record("a-1")))

    def test_wrong_width_rejected(self):
        cat = default_catalog()
        with pytest.raises(SchemaMismatch):
            Dataset(cat, (_record(width=120),))

    def test_rating_matrix_values_and_isolation(self):
        cat = default_catalog()
        ds = Dataset(cat, (_record("a-1", fill=2), _record("b-2", fill=6)))
        m = ds.rating_matrix()
        assert m.shape == (2, 121)
        assert m.dtype == np.int64
        assert set(m[0]) == {2} and set(m[1]) == {6}
        m[0, 0] = 99  # caller-side mutation must not leak back
        assert ds.rating_matrix()[0, 0] == 2

    def test_feature_matrix_category_slicing(self):
        cat = default_catalog()
        ds = Dataset(cat, (_record("a-1"),))
        full = ds.feature_matrix()
        assert full.shape == (1, 121)
        assert full.dtype == np.float64
        widths = [ds.feature_matrix(c).shape[1] for c in cat.category_names]
        assert widths == [30, 34, 25, 21, 11]
        sl = cat.category_slice("music")
        assert np.array_equal(ds.feature_matrix("music"), full[:, sl])

    def test_restrict_types(self):
        cat = default_catalog()
        ds = Dataset(
            cat,
            (_record("a-1", "intp"), _record("b-2", "enfj"), _record("c-3", "intp")),
        )
        sub = ds.restrict_types(["INTP"])
        assert sub.respondent_ids == ("a-1", "c-3")
        assert sub.catalog is cat
