"""Text preprocessing: tokenizer, stopper and Porter stemmer."""
import re
from functools import lru_cache
from pathlib import Path
from typing import FrozenSet, List, Optional, Union

from nltk.stem.porter import PorterStemmer

from irtune.utils.config import DEFAULT_STOPLIST
from irtune.utils.errors import InputReadError
from irtune.utils.models import IndexVariant

# Maximal runs of unicode letters/digits; underscore counts as a separator.
TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def tokenize(text: str) -> List[str]:
    return [token.lower() for token in TOKEN_RE.findall(text)]


@lru_cache(maxsize=8)
def load_stoplist(path: Optional[Union[str, Path]] = None) -> FrozenSet[str]:
    path = Path(path) if path is not None else DEFAULT_STOPLIST
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise InputReadError(f"cannot read stoplist {path}: {e}") from e
    return frozenset(word.strip().lower() for word in lines if word.strip())


def apply_stopper(tokens: List[str], stoplist: Optional[FrozenSet[str]] = None) -> List[str]:
    stopwords = stoplist if stoplist is not None else load_stoplist()
    return [token for token in tokens if token not in stopwords]


@lru_cache(maxsize=200_000)
def stem(token: str) -> str:
    # The reference implementation leaves words of length <= 2 alone.
    if len(token) <= 2:
        return token
    return _stemmer.stem(token, to_lowercase=False)


def apply_stemmer(tokens: List[str]) -> List[str]:
    return [stem(token) for token in tokens]


def preprocess(text: str, variant: IndexVariant, stoplist: Optional[FrozenSet[str]] = None) -> List[str]:
    """tokenize -> stop (if variant.stopper) -> stem (if variant.stemmer)."""
    tokens = tokenize(text)
    if variant.stopper:
        tokens = apply_stopper(tokens, stoplist)
    if variant.stemmer:
        tokens = apply_stemmer(tokens)
    return tokens
