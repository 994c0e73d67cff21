import pytest

from parabolica.parsing import parse_polynomial
from parabolica.report import full_report

Q_CUBIC = "x^2 + y^2 + y*(x^2 + y^2)"
G_QUARTIC = "y*(x+3)*(x-y)*(y+x-3)"
F_PAIR = "x^4 + 6*x^2*y^2 - y^4 + 3*x^2*y - 3*x*y^2 + 10*y^2 - 10*x^2"
G_PAIR = "x^4 + 6*x^2*y^2 - y^4 + 3*x^2*y - 3*x*y^2 + 10*y^2 + 10*x^2"
QUINTIC = "y*(x^2 + y^2)*(x^2 + 2*y^2) + x^4 - 10*x^2 + 10*y^2"

CORPUS_TEXT = {
    "q": Q_CUBIC,
    "g": G_QUARTIC,
    "f_pair": F_PAIR,
    "g_pair": G_PAIR,
    "quintic": QUINTIC,
}


@pytest.fixture(scope="session")
def corpus():
    return {name: parse_polynomial(text) for name, text in CORPUS_TEXT.items()}


@pytest.fixture(scope="session")
def corpus_reports(corpus):
    return {name: full_report(f, seed=0) for name, f in corpus.items()}
