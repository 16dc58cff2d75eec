"""Every docstring example in the package must execute as written."""

import doctest

import pytest

import spectra.complexes
import spectra.functors
import spectra.gen
import spectra.groups
import spectra.linalg
import spectra.moore_rings
import spectra.primes
import spectra.serialize
import spectra.verify

MODULES = [
    spectra.linalg,
    spectra.primes,
    spectra.groups,
    spectra.functors,
    spectra.moore_rings,
    spectra.complexes,
    spectra.serialize,
    spectra.gen,
    spectra.verify,
]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_doctests(module):
    failures, tested = doctest.testmod(module)
    assert failures == 0
    assert tested > 0  # modules are expected to carry examples
