"""Tagged diagnostic messages.

Messages go to standard error so that reports written to standard output
stay machine-readable.  ``set_quiet(True)`` silences them.
"""

import sys

_state = {'quiet': False}


def set_quiet(quiet=True):
    _state['quiet'] = bool(quiet)


def is_quiet():
    return _state['quiet']


def say(tag, message):
    """
    Prints ``[TAG] message`` to standard error unless quiet.

    Example: say('VERIFY', 'running table1 on p1k m=2')
    """
    if not is_quiet():
        print(f"[{tag}] {message}", file=sys.stderr)
