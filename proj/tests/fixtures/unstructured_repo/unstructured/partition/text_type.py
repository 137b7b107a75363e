"""Partition helpers that classify short snippets of text."""
import re
from typing import Final, List, Optional

try:
    from nltk import pos_tag
except ImportError:  # pragma: no cover
    pos_tag = None

from unstructured.cleaners.core import remove_punctuation
from unstructured.nlp.patterns import UNICODE_BULLETS_RE
from unstructured.nlp.tokenize import sent_tokenize, word_tokenize

POS_VERB_TAGS: Final[List[str]] = ["VB", "VBG", "VBD", "VBN", "VBP", "VBZ"]


def is_possible_narrative_text(text: str, cap_threshold: float = 0.5) -> bool:
    """Checks to see if the text passes all of the checks for a narrative text section."""
    if len(text) == 0:
        return False
    if len(text) < 50 and not contains_verb(text):
        return False
    if sentence_count(text, 3) < 1:
        return False
    return not exceeds_cap_ratio(text, threshold=cap_threshold)


def is_bulleted_text(text: str) -> bool:
    """Checks to see if the section of text is part of a bulleted list."""
    return UNICODE_BULLETS_RE.match(text.strip()) is not None


def contains_verb(text: str) -> bool:
    """Use a POS tagger to check if a segment contains verbs."""
    if text.isupper():
        text = text.lower()
    pos_tags = pos_tag(word_tokenize(text))
    return any(tag in POS_VERB_TAGS for _, tag in pos_tags)


def sentence_count(text: str, min_length: Optional[int] = None) -> int:
    """Checks the sentence count for a section of text."""
    count = 0
    for sentence in sent_tokenize(text):
        words = [w for w in word_tokenize(sentence) if w != "."]
        if min_length and len(words) < min_length:
            continue
        count += 1
    return count


def exceeds_cap_ratio(text: str, threshold: float = 0.5) -> bool:
    """Checks the title ratio in a section of text."""
    if sentence_count(text) > 1:
        return False
    tokens = word_tokenize(remove_punctuation(text))
    capitalized = sum(bool(re.match("[A-Z]", t)) for t in tokens)
    return capitalized / max(len(tokens), 1) > threshold


async def classify_async(texts: List[str]) -> List[bool]:
    return [is_possible_narrative_text(t) for t in texts]
