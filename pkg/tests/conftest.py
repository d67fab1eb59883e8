from hypothesis import strategies as st

from primnorm.words import Word


@st.composite
def reduced_words(draw, rank: int = 2, max_len: int = 12, min_len: int = 0) -> Word:
    """Freely reduced words drawn letter by letter (never an inverse pair)."""
    length = draw(st.integers(min_value=min_len, max_value=max_len))
    letters: list[int] = []
    alphabet = [g for k in range(1, rank + 1) for g in (k, -k)]
    for _ in range(length):
        options = [v for v in alphabet if not letters or v != -letters[-1]]
        letters.append(draw(st.sampled_from(options)))
    return Word(rank, tuple(letters))
