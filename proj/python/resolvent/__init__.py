"""Python front end for the resolvent core."""

import json
import os

from . import _core

__all__ = ["Report", "load", "catalog", "random_instance", "validate", "build", "verify", "homology"]


class Report(dict):
    """Parsed JSON report plus the process-style exit code."""

    def __init__(self, exit_code, text):
        super().__init__(json.loads(text))
        self.exit_code = exit_code

    @property
    def ok(self):
        return self.exit_code == _core.PASS

    def verdict(self, name):
        for v in self.get("verdicts", []):
            if v["name"] == name:
                return v
        raise KeyError(name)


def load(instance):
    """Instance as a JSON string: accepts a dict, a path or JSON text."""
    if isinstance(instance, dict):
        return json.dumps(instance)
    if isinstance(instance, (str, os.PathLike)) and os.path.exists(instance):
        with open(instance) as fh:
            return fh.read()
    return instance


def catalog(index):
    return json.loads(_core.catalog_instance(index))


def random_instance(seed, kind="linear"):
    return json.loads(_core.random_instance(seed, kind))


def _run(command, instance, window=None, degree_max=None, prime=None, module=None, out="", threads=0,
         timings=False):
    if window is not None:
        window = (int(window[0]), int(window[1]))
    code, text = _core.run(command, load(instance), window, degree_max, prime, module, str(out), threads, timings)
    return Report(code, text)


def validate(instance, **kw):
    return _run("validate", instance, **kw)


def build(instance, out, **kw):
    return _run("build", instance, out=out, **kw)


def verify(instance, **kw):
    return _run("verify", instance, **kw)


def homology(instance, module=None, **kw):
    return _run("homology", instance, module=module, **kw)
