"""Unicode-aware tokenization shared by the index and the query parser."""

import re

# Tokens are maximal runs of letters and digits. Everything else, including
# hyphens and underscores, separates tokens, so "Pet-Fish" tokenizes the same
# as "pet fish".
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def normalize(text: str) -> list[str]:
    """Lowercase ``text`` and split it into tokens. Empty input gives []."""
    return _TOKEN_RE.findall(text.lower())
