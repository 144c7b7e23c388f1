"""String and token similarity metrics between sense definitions.

Metrics operate at three granularities and every normalised value lands
in [0, 1]:

* set overlaps on token sets (Jaccard family, including an exponentially
  smoothed Jaccard that approaches plain Jaccard as the rate goes to 0),
* sequence metrics on token sequences (common subsequence, substring,
  prefix, suffix, n-gram overlap),
* edit metrics on character strings (Levenshtein, Jaro, Jaro-Winkler)
  and Monge-Elkan over tokens,
* surface flags (length ratios, negation, digit runs, hashed bags).
"""

from __future__ import annotations

import hashlib
import math
import re
from collections import Counter
from enum import Enum
from typing import Iterable, Sequence

from .errors import NonPositiveAlpha
from .lexdata import tokenize

DEFAULT_NEGATION_WORDS = frozenset(
    {"no", "not", "never", "none", "neither", "nor", "nothing", "without", "n't"}
)

_DIGIT_RUN = re.compile(r"\d+")


class OverlapKind(Enum):
    JACCARD = "jaccard"
    DICE = "dice"
    CONTAINMENT = "containment"
    SMOOTHED = "smoothed"


def jaccard(a: Iterable[str], b: Iterable[str]) -> float:
    sa, sb = set(a), set(b)
    if not sa and not sb:
        return 1.0
    if not sa or not sb:
        return 0.0
    return len(sa & sb) / len(sa | sb)


def dice(a: Iterable[str], b: Iterable[str]) -> float:
    sa, sb = set(a), set(b)
    if not sa and not sb:
        return 1.0
    if not sa or not sb:
        return 0.0
    return 2 * len(sa & sb) / (len(sa) + len(sb))


def containment(a: Iterable[str], b: Iterable[str]) -> float:
    sa, sb = set(a), set(b)
    if not sa and not sb:
        return 1.0
    if not sa or not sb:
        return 0.0
    return len(sa & sb) / min(len(sa), len(sb))


def smoothed_jaccard(a: Iterable[str], b: Iterable[str], alpha: float = 0.5) -> float:
    """Jaccard with set sizes passed through sigma(x) = 1 - exp(-alpha x).

    The union size enters through inclusion-exclusion, so the value
    tends to plain Jaccard as alpha approaches 0 and saturates towards
    containment-like behaviour for large alpha.
    """
    if alpha <= 0:
        raise NonPositiveAlpha(f"alpha must be > 0, got {alpha}")
    sa, sb = set(a), set(b)
    if not sa and not sb:
        return 1.0
    if not sa or not sb:
        return 0.0

    def sigma(x: int) -> float:
        return 1.0 - math.exp(-alpha * x)

    inter = len(sa & sb)
    num = sigma(inter)
    den = sigma(len(sa)) + sigma(len(sb)) - sigma(inter)
    if den <= 0.0:
        return 0.0
    return min(1.0, max(0.0, num / den))


def set_overlap(a: Iterable[str], b: Iterable[str], kind: OverlapKind, alpha: float = 0.5) -> float:
    if kind is OverlapKind.JACCARD:
        return jaccard(a, b)
    if kind is OverlapKind.DICE:
        return dice(a, b)
    if kind is OverlapKind.CONTAINMENT:
        return containment(a, b)
    return smoothed_jaccard(a, b, alpha)


def lcs_subsequence_len(a: Sequence, b: Sequence) -> int:
    """Length of the longest common subsequence (not necessarily contiguous)."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return 0
    prev = [0] * (m + 1)
    for i in range(1, n + 1):
        cur = [0] * (m + 1)
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[m]


def lcs_substring_len(a: Sequence, b: Sequence) -> int:
    """Length of the longest common contiguous run."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return 0
    best = 0
    prev = [0] * (m + 1)
    for i in range(1, n + 1):
        cur = [0] * (m + 1)
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best


def common_prefix_len(a: Sequence, b: Sequence) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def common_suffix_len(a: Sequence, b: Sequence) -> int:
    k = 0
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            break
        k += 1
    return k


def ngram_overlap_count(a: Sequence, b: Sequence, n: int) -> int:
    """Number of shared n-grams, counted as a multiset intersection."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if len(a) < n or len(b) < n:
        return 0
    grams_a = Counter(tuple(a[i : i + n]) for i in range(len(a) - n + 1))
    grams_b = Counter(tuple(b[i : i + n]) for i in range(len(b) - n + 1))
    return sum((grams_a & grams_b).values())


def sequence_metrics(a: Sequence, b: Sequence, n: int = 2) -> dict[str, float]:
    """Normalised sequence metrics.

    Counts are divided by the average sequence length (the average
    n-gram capacity for the n-gram count, floored at one) and clamped
    to [0, 1].  Two empty sequences score 1 on every metric, a single
    empty one scores 0.
    """
    if len(a) == 0 and len(b) == 0:
        return {
            "lcs_subsequence": 1.0,
            "lcs_substring": 1.0,
            "common_prefix": 1.0,
            "common_suffix": 1.0,
            "ngram": 1.0,
        }
    if len(a) == 0 or len(b) == 0:
        return {
            "lcs_subsequence": 0.0,
            "lcs_substring": 0.0,
            "common_prefix": 0.0,
            "common_suffix": 0.0,
            "ngram": 0.0,
        }
    avg_len = (len(a) + len(b)) / 2.0
    gram_capacity = max(1.0, ((len(a) - n + 1) + (len(b) - n + 1)) / 2.0)

    def norm(raw: int, den: float) -> float:
        return min(1.0, max(0.0, raw / den))

    return {
        "lcs_subsequence": norm(lcs_subsequence_len(a, b), avg_len),
        "lcs_substring": norm(lcs_substring_len(a, b), avg_len),
        "common_prefix": norm(common_prefix_len(a, b), avg_len),
        "common_suffix": norm(common_suffix_len(a, b), avg_len),
        "ngram": norm(ngram_overlap_count(a, b, n), gram_capacity),
    }


def levenshtein(a: Sequence, b: Sequence) -> int:
    """Edit distance with unit insert, delete and substitute costs."""
    n, m = len(a), len(b)
    if n == 0:
        return m
    if m == 0:
        return n
    prev = list(range(m + 1))
    for i in range(1, n + 1):
        cur = [i] + [0] * m
        ai = a[i - 1]
        for j in range(1, m + 1):
            sub = prev[j - 1] + (0 if ai == b[j - 1] else 1)
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, sub)
        prev = cur
    return prev[m]


def levenshtein_similarity(a: Sequence, b: Sequence) -> float:
    """1 - distance / max length; 1 when both sequences are empty."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def jaro(a: str, b: str) -> float:
    """Jaro similarity: zero when no characters match within the
    conventional window, one for two empty strings."""
    if len(a) == 0 and len(b) == 0:
        return 1.0
    if len(a) == 0 or len(b) == 0:
        return 0.0
    window = max(len(a), len(b)) // 2 - 1
    if window < 0:
        window = 0
    a_matched = [False] * len(a)
    b_matched = [False] * len(b)
    matches = 0
    for i, ch in enumerate(a):
        lo = max(0, i - window)
        hi = min(len(b), i + window + 1)
        for j in range(lo, hi):
            if not b_matched[j] and b[j] == ch:
                a_matched[i] = True
                b_matched[j] = True
                matches += 1
                break
    if matches == 0:
        return 0.0
    transpositions = 0
    j = 0
    for i, ch in enumerate(a):
        if a_matched[i]:
            while not b_matched[j]:
                j += 1
            if ch != b[j]:
                transpositions += 1
            j += 1
    t = transpositions / 2.0
    m = float(matches)
    return (m / len(a) + m / len(b) + (m - t) / m) / 3.0


def jaro_winkler(a: str, b: str, prefix_scale: float = 0.1, max_prefix: int = 4) -> float:
    """Jaro boosted by the shared prefix, capped at ``max_prefix``."""
    j = jaro(a, b)
    ell = 0
    for x, y in zip(a, b):
        if x != y or ell >= max_prefix:
            break
        ell += 1
    return j + ell * prefix_scale * (1.0 - j)


def monge_elkan(a_tokens: Sequence[str], b_tokens: Sequence[str]) -> float:
    """Average over tokens of ``a`` of the best Jaro-Winkler match in ``b``."""
    if len(a_tokens) == 0 and len(b_tokens) == 0:
        return 1.0
    if len(a_tokens) == 0 or len(b_tokens) == 0:
        return 0.0
    total = 0.0
    for ta in a_tokens:
        total += max(jaro_winkler(ta, tb) for tb in b_tokens)
    return total / len(a_tokens)


def edit_metrics(a_text: str, b_text: str) -> dict[str, float]:
    """Character-level edit metrics on normalised text plus Monge-Elkan
    over tokens."""
    a_tokens = tokenize(a_text)
    b_tokens = tokenize(b_text)
    a_norm = " ".join(a_tokens)
    b_norm = " ".join(b_tokens)
    return {
        "levenshtein": levenshtein_similarity(a_norm, b_norm),
        "jaro": jaro(a_norm, b_norm),
        "jaro_winkler": jaro_winkler(a_norm, b_norm),
        "monge_elkan": monge_elkan(a_tokens, b_tokens),
    }


def _has_negation(tokens: Sequence[str], lexicon: frozenset[str]) -> bool:
    suffixes = tuple(w for w in lexicon if w.startswith("n'"))
    for tok in tokens:
        if tok in lexicon:
            return True
        if suffixes and tok.endswith(suffixes):
            return True
    return False


def _digit_runs(text: str) -> frozenset[str]:
    return frozenset(_DIGIT_RUN.findall(text))


def _token_hash(token: str) -> int:
    return int.from_bytes(hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big")


def bag_of_words_overlap(a_tokens: Iterable[str], b_tokens: Iterable[str]) -> float:
    """Jaccard over 64-bit token hashes; stable across runs and threads."""
    return jaccard(
        {format(_token_hash(t), "016x") for t in set(a_tokens)},
        {format(_token_hash(t), "016x") for t in set(b_tokens)},
    )


def surface_flags(
    a_text: str,
    b_text: str,
    negation_words: frozenset[str] = DEFAULT_NEGATION_WORDS,
) -> dict[str, float]:
    """Coarse surface comparisons between two definitions.

    ``slr`` is one minus the shorter-to-longer token count ratio,
    ``avg_word_len_ratio`` applies the same form to mean token lengths.
    ``negation`` is 1 when both sides agree on containing (or lacking)
    a negation word; ``number`` is 1 when the sets of maximal digit
    runs in the raw texts are equal.
    """
    a_tokens = tokenize(a_text)
    b_tokens = tokenize(b_text)
    na, nb = len(a_tokens), len(b_tokens)
    if na == 0 and nb == 0:
        slr = 0.0
        awlr = 0.0
    elif na == 0 or nb == 0:
        slr = 1.0
        awlr = 1.0
    else:
        slr = 1.0 - min(na, nb) / max(na, nb)
        avg_a = sum(len(t) for t in a_tokens) / na
        avg_b = sum(len(t) for t in b_tokens) / nb
        awlr = 1.0 - min(avg_a, avg_b) / max(avg_a, avg_b)
    negation = 1.0 if _has_negation(a_tokens, negation_words) == _has_negation(b_tokens, negation_words) else 0.0
    number = 1.0 if _digit_runs(a_text) == _digit_runs(b_text) else 0.0
    return {
        "slr": slr,
        "avg_word_len_ratio": awlr,
        "negation": negation,
        "number": number,
        "bag_of_words": bag_of_words_overlap(a_tokens, b_tokens),
    }


def string_features(
    a_text: str,
    b_text: str,
    ngram_n: int = 2,
    alpha: float = 0.5,
    negation_words: frozenset[str] = DEFAULT_NEGATION_WORDS,
) -> dict[str, float]:
    """The full named metric map for one definition pair.

    Set metrics use token sets, sequence metrics token sequences, edit
    metrics normalised character strings.
    """
    a_tokens = tokenize(a_text)
    b_tokens = tokenize(b_text)
    out: dict[str, float] = {
        "jaccard": jaccard(a_tokens, b_tokens),
        "dice": dice(a_tokens, b_tokens),
        "containment": containment(a_tokens, b_tokens),
        "smoothed_jaccard": smoothed_jaccard(a_tokens, b_tokens, alpha),
    }
    out.update(sequence_metrics(a_tokens, b_tokens, ngram_n))
    out.update(edit_metrics(a_text, b_text))
    out.update(surface_flags(a_text, b_text, negation_words))
    return out
