import doctest

import pytest

import blochclf.classify
import blochclf.encoding


@pytest.mark.parametrize("module", [blochclf.encoding, blochclf.classify])
def test_docstring_examples(module):
    result = doctest.testmod(module, optionflags=doctest.NORMALIZE_WHITESPACE)
    assert result.attempted > 0 and result.failed == 0
