"""A small worked profile where every rule picks a different story.

Three candidates, 480 ballots, 50 of them bullet votes. Plurality rewards
the polarizing first-place leader, instant runoff flips to the runner-up
after the transfer round, and the pairwise-dominant candidate takes
Bucklin, minimax, and Borda. Used by the ``example`` subcommand and as a
tabulation oracle in the tests.
"""

from .ballots import parse_profile

DEMO_PROFILE_TEXT = """\
A,B,C
20: A>B>C
130: A>C>B
30: A
40: B>A>C
120: B>C>A
10: B
50: C>A>B
70: C>B>A
10: C
"""


def demo_profile():
    """Parsed demo profile plus its candidate names."""
    return parse_profile(DEMO_PROFILE_TEXT)
