"""Seed-keyword expansion with embedding neighbors.

Each non-stop seed term proposes up to k neighbors whose similarity is
strictly above min_sim; merged candidates are weighted by their maximum
similarity to any non-stop seed term. Those weights later feed the
per-term delta factor of the ranking formula.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .corpus import tokenize
from .embedding import EmbeddingModel, most_similar, sim
from .errors import AllStopwords, EmptySeed, NotInQuery

log = logging.getLogger(__name__)

DEFAULT_K = 4
DEFAULT_MIN_SIM = 0.6


class StopwordList:
    """Set of lowercase function words; built-in list ships as a data file."""

    def __init__(self, words: Iterable[str]):
        cleaned = set()
        for word in words:
            if word != word.lower() or any(ch.isspace() for ch in word) or not word:
                raise ValueError(f"stop words must be lowercase and whitespace-free: {word!r}")
            cleaned.add(word)
        self._words = frozenset(cleaned)

    @classmethod
    def built_in(cls) -> "StopwordList":
        text = resources.files("eventsearch").joinpath("data/stopwords.txt").read_text("utf-8")
        return cls._parse(text.splitlines())

    @classmethod
    def from_file(cls, path: str | Path) -> "StopwordList":
        with open(path, encoding="utf-8") as handle:
            return cls._parse(handle)

    @classmethod
    def _parse(cls, lines: Iterable[str]) -> "StopwordList":
        words = []
        for raw in lines:
            line = raw.strip()
            if line and not line.startswith("#"):
                words.append(line)
        return cls(words)

    def __contains__(self, word: str) -> bool:
        return word in self._words

    def __iter__(self):
        return iter(sorted(self._words))

    def __len__(self) -> int:
        return len(self._words)


@dataclass(frozen=True)
class ExpandedQuery:
    """Seed terms (delta 1) plus expansion terms with weights in (min_sim, 1]."""

    seed_terms: tuple[str, ...]
    expansion_terms: dict[str, float]
    stopword_seeds: frozenset[str] = frozenset()
    k: int = DEFAULT_K
    min_sim: float = DEFAULT_MIN_SIM

    def all_terms(self) -> set[str]:
        return set(self.seed_terms) | set(self.expansion_terms)

    def delta(self, term: str) -> float:
        """1.0 for seed terms (stop words included), the merged max-sim
        weight for expansion terms."""
        if term in self.seed_terms:
            return 1.0
        if term in self.expansion_terms:
            return self.expansion_terms[term]
        raise NotInQuery(term)

    def without_expansion(self) -> "ExpandedQuery":
        return ExpandedQuery(self.seed_terms, {}, self.stopword_seeds, self.k, self.min_sim)


def normalize_seed(seed: Iterable[str]) -> list[str]:
    """Tokenize raw seed entries and dedupe, keeping first-seen order."""
    ordered: list[str] = []
    seen = set()
    for raw in seed:
        for token in tokenize("", raw):
            if token not in seen:
                seen.add(token)
                ordered.append(token)
    return ordered


def seed_only_query(
    seed: Iterable[str],
    stopwords: StopwordList | None = None,
    k: int = DEFAULT_K,
    min_sim: float = DEFAULT_MIN_SIM,
) -> ExpandedQuery:
    """Normalized query with an empty expansion map (no model involved)."""
    stopwords = stopwords if stopwords is not None else StopwordList.built_in()
    terms = normalize_seed(seed)
    if not terms:
        raise EmptySeed("no seed terms left after normalization")
    stops = frozenset(t for t in terms if t in stopwords)
    return ExpandedQuery(tuple(terms), {}, stops, k, min_sim)


def expand_query(
    seed: Iterable[str],
    model: EmbeddingModel,
    stopwords: StopwordList | None = None,
    k: int = DEFAULT_K,
    min_sim: float = DEFAULT_MIN_SIM,
) -> ExpandedQuery:
    """Expand seed keywords with embedding neighbors.

    Every non-stop seed term found in the model vocabulary proposes up to
    k candidates with similarity strictly above min_sim; candidates that
    are stop words or seed terms are dropped; each surviving candidate j
    is weighted by max(sim(j, m)) over the non-stop seed terms m.

    Raises EmptySeed for an empty seed and AllStopwords when every seed
    term is a stop word. Seed terms missing from the vocabulary contribute
    no candidates but stay in the query.
    """
    if not 1 <= k <= 4:
        raise ValueError(f"k must be in 1..4, got {k}")
    if not 0.0 < min_sim < 1.0:
        raise ValueError(f"min_sim must be in (0, 1), got {min_sim}")
    stopwords = stopwords if stopwords is not None else StopwordList.built_in()
    terms = normalize_seed(seed)
    if not terms:
        raise EmptySeed("no seed terms left after normalization")
    stops = frozenset(t for t in terms if t in stopwords)
    content_terms = [t for t in terms if t not in stops]
    if not content_terms:
        raise AllStopwords(f"every seed term is a stop word: {terms}")

    in_vocab = [t for t in content_terms if t in model]
    for missing in (t for t in content_terms if t not in model):
        log.warning("seed term %r not in %s vocabulary, skipping expansion for it",
                    missing, model.month_key)

    candidates: set[str] = set()
    for term in in_vocab:
        for neighbor, _ in most_similar(model, term, k, min_sim):
            if neighbor not in stopwords and neighbor not in terms:
                candidates.add(neighbor)

    weighted = {j: max(sim(model, j, m) for m in in_vocab) for j in candidates}
    ordered = dict(sorted(weighted.items(), key=lambda item: (-item[1], item[0])))
    return ExpandedQuery(tuple(terms), ordered, stops, k, min_sim)


def format_expansion(query: ExpandedQuery) -> str:
    """One line per term: "<term>\\t<weight>\\t<seed|expansion>".

    Seed terms come first in input order, then expansion terms by weight
    descending (ties lexicographic); weights carry 6 decimal places.
    """
    lines = [f"{term}\t{1.0:.6f}\tseed" for term in query.seed_terms]
    ranked = sorted(query.expansion_terms.items(), key=lambda item: (-item[1], item[0]))
    lines += [f"{term}\t{weight:.6f}\texpansion" for term, weight in ranked]
    return "\n".join(lines)
