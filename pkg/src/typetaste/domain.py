"""Core vocabulary: personality codes, the 0..6 rating scale, the genre
catalog, and the survey record/dataset containers every other module builds on.
"""

from __future__ import annotations

import csv
import operator
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    CatalogError,
    DuplicateRespondent,
    InvalidMbtiCode,
    InvalidRating,
    SchemaMismatch,
    UnknownGenre,
)


class MbtiType(str, Enum):
    """One of the 16 four-letter personality codes.

    The canonical form is lowercase; members compare and hash as their
    lowercase string values, so they can be used directly as dict keys or
    printed into CSV cells.
    """

    ENFJ = "enfj"
    ENFP = "enfp"
    ENTJ = "entj"
    ENTP = "entp"
    ESFJ = "esfj"
    ESFP = "esfp"
    ESTJ = "estj"
    ESTP = "estp"
    INFJ = "infj"
    INFP = "infp"
    INTJ = "intj"
    INTP = "intp"
    ISFJ = "isfj"
    ISFP = "isfp"
    ISTJ = "istj"
    ISTP = "istp"

    def __str__(self) -> str:
        return self.value

    @property
    def code(self) -> str:
        return self.value

    @property
    def attitude(self) -> str:
        """'i' (introversion) or 'e' (extroversion)."""
        return self.value[0]

    @property
    def information(self) -> str:
        """'n' (intuition) or 's' (sensing)."""
        return self.value[1]

    @property
    def decision(self) -> str:
        """'t' (thinking) or 'f' (feeling)."""
        return self.value[2]

    @property
    def lifestyle(self) -> str:
        """'j' (judging) or 'p' (perceiving)."""
        return self.value[3]

    @property
    def is_introvert(self) -> bool:
        return self.value[0] == "i"


# Members are declared alphabetically, so this is also sorted order.
ALL_TYPES: tuple[MbtiType, ...] = tuple(MbtiType)


def parse_mbti(text: str) -> MbtiType:
    """Parse a four-letter personality code, case-insensitively."""
    if isinstance(text, MbtiType):
        return text
    if isinstance(text, str):
        try:
            return MbtiType(text.lower())
        except ValueError:
            pass
    raise InvalidMbtiCode(f"not a valid personality code: {text!r}")


RATING_MIN = 0
RATING_MAX = 6

# Ratings of 4 and above count as enjoyment; 0 marks lack of exposure, not
# dislike, and must be excluded from preference averages.
ENJOYMENT_THRESHOLD = 4

_RATING_MEANINGS = (
    "No Experience",
    "Dislike strongly",
    "Dislike",
    "Neutral/No opinion",
    "Mild enjoyment",
    "Reasonably enjoyable",
    "Highly enjoyable",
)


def check_rating(value: int) -> int:
    """Return ``value`` as a plain int, or raise :class:`InvalidRating`."""
    try:
        v = operator.index(value)
    except TypeError:
        raise InvalidRating(f"rating must be an integer, got {value!r}") from None
    if not RATING_MIN <= v <= RATING_MAX:
        raise InvalidRating(f"rating must be in {RATING_MIN}..{RATING_MAX}, got {v}")
    return v


def rating_meaning(rating: int) -> str:
    """Human label for one value of the 0..6 scale."""
    return _RATING_MEANINGS[check_rating(rating)]


def is_enjoyment(rating: int) -> bool:
    """True for ratings of 4 (mild enjoyment) and above."""
    return check_rating(rating) >= ENJOYMENT_THRESHOLD


# The five survey categories, in canonical column order, with their sizes.
CATEGORY_SIZES: Mapping[str, int] = {
    "fiction-books": 30,
    "nonfiction-books": 34,
    "music": 25,
    "movies": 21,
    "video-games": 11,
}

CATEGORY_ORDER: tuple[str, ...] = tuple(CATEGORY_SIZES)

N_GENRES = sum(CATEGORY_SIZES.values())

PSYCHOLOGY = "Psychology"
RELIGION_SPIRITUALITY = "Religion & Spirituality"


@dataclass(frozen=True)
class GenreCatalog:
    """Ordered genre names grouped into the five survey categories.

    ``categories`` is a tuple of ``(category_name, genre_names)`` pairs.  The
    category names, their order, and their sizes are fixed by the survey
    design; genre names within them are free but must be unique overall.
    Column order of every rating matrix is the flattened genre order.
    """

    categories: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        names = tuple(name for name, _ in self.categories)
        if names != CATEGORY_ORDER:
            raise CatalogError(
                f"categories must be exactly {CATEGORY_ORDER} in order, got {names}"
            )
        for name, genres in self.categories:
            if len(genres) != CATEGORY_SIZES[name]:
                raise CatalogError(
                    f"category {name!r} must have {CATEGORY_SIZES[name]} genres, "
                    f"got {len(genres)}"
                )
        flat = [g for _, genres in self.categories for g in genres]
        if len(set(flat)) != len(flat):
            seen: set[str] = set()
            dupes = sorted({g for g in flat if g in seen or seen.add(g)})
            raise CatalogError(f"duplicate genre names: {dupes}")
        if any(not g for g in flat):
            raise CatalogError("genre names must be non-empty")

    @cached_property
    def genres(self) -> tuple[str, ...]:
        """All genre names in canonical column order."""
        return tuple(g for _, genres in self.categories for g in genres)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.genres)}

    @cached_property
    def _category_slices(self) -> dict[str, slice]:
        out = {}
        start = 0
        for name, genres in self.categories:
            out[name] = slice(start, start + len(genres))
            start += len(genres)
        return out

    def __len__(self) -> int:
        return len(self.genres)

    def __contains__(self, genre: object) -> bool:
        return genre in self._index

    @property
    def category_names(self) -> tuple[str, ...]:
        return CATEGORY_ORDER

    def index(self, genre: str) -> int:
        """Column index of ``genre``, or raise :class:`UnknownGenre`."""
        try:
            return self._index[genre]
        except KeyError:
            raise UnknownGenre(f"genre not in catalog: {genre!r}") from None

    def category_of(self, genre: str) -> str:
        i = self.index(genre)
        for name, sl in self._category_slices.items():
            if sl.start <= i < sl.stop:
                return name
        raise AssertionError("unreachable")  # pragma: no cover

    def category_slice(self, category: str) -> slice:
        """Column slice covering one category, or raise :class:`CatalogError`."""
        try:
            return self._category_slices[category]
        except KeyError:
            raise CatalogError(f"unknown category: {category!r}") from None

    def genres_in(self, category: str) -> tuple[str, ...]:
        return self.genres[self.category_slice(category)]


def default_catalog() -> GenreCatalog:
    """Catalog with the standard category structure and stable placeholder
    genre names.

    The two nonfiction genres that are analysed individually (Psychology and
    Religion & Spirituality) carry their real names; the remaining slots get
    deterministic ``<category>_<nn>`` placeholders.
    """
    def block(prefix: str, count: int) -> list[str]:
        return [f"{prefix}_{i:02d}" for i in range(count)]

    nonfiction = [PSYCHOLOGY, RELIGION_SPIRITUALITY]
    nonfiction += block("nonfiction", CATEGORY_SIZES["nonfiction-books"])[2:]
    return GenreCatalog(
        (
            ("fiction-books", tuple(block("fiction", 30))),
            ("nonfiction-books", tuple(nonfiction)),
            ("music", tuple(block("music", 25))),
            ("movies", tuple(block("movies", 21))),
            ("video-games", tuple(block("games", 11))),
        )
    )


CATALOG_HEADER = ("category", "genre")


def save_catalog(catalog: GenreCatalog, path: str | Path) -> None:
    """Write a catalog as ``category,genre`` rows, one per genre, in order."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CATALOG_HEADER)
        for name, genres in catalog.categories:
            for genre in genres:
                writer.writerow([name, genre])


def load_catalog(path: str | Path) -> GenreCatalog:
    """Read a ``category,genre`` CSV written by :func:`save_catalog`."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != list(CATALOG_HEADER):
            raise SchemaMismatch(
                f"catalog header must be {','.join(CATALOG_HEADER)!r}, got {header}"
            )
        groups: list[tuple[str, list[str]]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise SchemaMismatch(f"catalog line {lineno}: expected 2 columns")
            name, genre = row
            if not groups or groups[-1][0] != name:
                groups.append((name, []))
            groups[-1][1].append(genre)
    return GenreCatalog(tuple((name, tuple(genres)) for name, genres in groups))


@dataclass(frozen=True)
class SurveyRecord:
    """One respondent: id, personality type, and one rating per genre."""

    respondent_id: str
    mbti: MbtiType
    ratings: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.respondent_id, str) or not self.respondent_id:
            raise SchemaMismatch("respondent id must be a non-empty string")
        object.__setattr__(self, "mbti", parse_mbti(self.mbti))
        object.__setattr__(
            self, "ratings", tuple(check_rating(r) for r in self.ratings)
        )

    def rating_for(self, catalog: GenreCatalog, genre: str) -> int:
        return self.ratings[catalog.index(genre)]


@dataclass(frozen=True)
class Dataset:
    """An immutable survey table: a catalog plus one record per respondent.

    Every record must have exactly one rating per catalog genre and respondent
    ids must be unique.  Matrix accessors return fresh arrays, so callers can
    mutate them freely.
    """

    catalog: GenreCatalog
    records: tuple[SurveyRecord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        width = len(self.catalog)
        seen: set[str] = set()
        for rec in self.records:
            if len(rec.ratings) != width:
                raise SchemaMismatch(
                    f"record {rec.respondent_id!r} has {len(rec.ratings)} ratings, "
                    f"catalog has {width} genres"
                )
            if rec.respondent_id in seen:
                raise DuplicateRespondent(f"duplicate respondent id: {rec.respondent_id!r}")
            seen.add(rec.respondent_id)

    def __len__(self) -> int:
        return len(self.records)

    @cached_property
    def respondent_ids(self) -> tuple[str, ...]:
        return tuple(rec.respondent_id for rec in self.records)

    @cached_property
    def types(self) -> tuple[MbtiType, ...]:
        """Per-respondent personality labels, aligned with matrix rows."""
        return tuple(rec.mbti for rec in self.records)

    @cached_property
    def _matrix(self) -> np.ndarray:
        m = np.array([rec.ratings for rec in self.records], dtype=np.int64)
        return m.reshape(len(self.records), len(self.catalog))

    @cached_property
    def _by_id(self) -> dict[str, SurveyRecord]:
        return {rec.respondent_id: rec for rec in self.records}

    def record(self, respondent_id: str) -> SurveyRecord:
        try:
            return self._by_id[respondent_id]
        except KeyError:
            raise SchemaMismatch(f"no such respondent: {respondent_id!r}") from None

    def rating_matrix(self, dtype=np.int64) -> np.ndarray:
        """Full (n_respondents, n_genres) rating matrix as a new array."""
        return self._matrix.astype(dtype, copy=True)

    def feature_matrix(self, category: str | None = None) -> np.ndarray:
        """Float rating matrix, optionally restricted to one category's columns."""
        m = self._matrix
        if category is not None:
            m = m[:, self.catalog.category_slice(category)]
        return m.astype(np.float64, copy=True)

    def restrict_types(self, types: Iterable[MbtiType | str]) -> "Dataset":
        """Subset with only the given personality types, preserving row order."""
        wanted = {parse_mbti(t) for t in types}
        return Dataset(self.catalog, tuple(r for r in self.records if r.mbti in wanted))
