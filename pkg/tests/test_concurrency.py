"""The memo tables must behave as if absent under concurrent use."""

import threading
from fractions import Fraction

from polylog.harmonic import h_poly_table, h_word_eval
from polylog.nc_core import NCPoly, Word, Y, x_word, y_word
from polylog.products import shuffle, stuffle


def _run_threads(worker, count=8):
    errors = []

    def wrapped():
        try:
            worker()
        except Exception as exc:  # pragma: no cover - diagnostic path
            errors.append(exc)

    threads = [threading.Thread(target=wrapped) for _ in range(count)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors


def test_concurrent_products_agree():
    u = NCPoly.from_word(x_word("0110"))
    v = NCPoly.from_word(x_word("101"))
    expected = shuffle(u, v)

    def worker():
        for _ in range(20):
            assert shuffle(u, v) == expected

    _run_threads(worker)


def test_concurrent_harmonic_tables_agree():
    q = stuffle(NCPoly.from_word(y_word(2)), NCPoly.from_word(y_word(1, 1)))
    expected = h_poly_table(q, 25)

    def worker():
        for _ in range(10):
            assert h_poly_table(q, 25) == expected
            assert h_word_eval(y_word(1), 10) == Fraction(7381, 2520)

    _run_threads(worker)
