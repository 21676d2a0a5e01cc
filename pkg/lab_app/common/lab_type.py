"""Command names, parameter metadata and output format of the lab commands."""
import json

from timpy.tools.spectral.constants import (
    ETA_KIND, EVOLVE_MODE, FIELD_COMPONENTS, SweepDefaults)


# .............................................................................
class LabKey:
    """Keywords in a lab command response."""
    SERVICE = "service"
    DESCRIPTION = "description"
    OUTPUT = "output"
    ERRORS = "errors"

    # ...............................................
    @classmethod
    def response_keys(cls):
        """Top level keywords in a valid lab command response.

        Returns:
            set of all top level keywords in a lab_app.common.lab_type.LabOutput
        """
        return {cls.SERVICE, cls.DESCRIPTION, cls.OUTPUT, cls.ERRORS}


# .............................................................................
class LabCommandName:
    """Subcommand names of the lab CLI."""
    Besov = "besov"
    Symbol = "symbol"
    Evolve = "evolve"
    Energy = "energy"
    Decay = "decay"
    Inequalities = "inequalities"

    # ...............................................
    @classmethod
    def values(cls):
        """Return all subcommand names.

        Returns:
            tuple of the subcommand names
        """
        return (
            cls.Besov, cls.Symbol, cls.Evolve, cls.Energy, cls.Decay, cls.Inequalities)


# .............................................................................
class LabCommand:
    """Name, parameters and description of every lab command.

    Note:
        Parameters listed in `required` have no usable default.
        The python type of `type` is the parameter type: "" for strings, 0 for
            integers, 0.0 for floats and False for booleans.
    """
    Base = {
        "name": "",
        "required": [],
        "params": {},
        "description": "",
    }
    Besov = {
        "name": LabCommandName.Besov,
        "required": ["input"],
        "params": {
            "input": {
                "type": "",
                "description": "Field CSV file with columns x, v, u, z, y",
                "default": None
            },
            "component": {
                "type": "",
                "description": "Field component to measure",
                "options": list(FIELD_COMPONENTS),
                "default": FIELD_COMPONENTS[0]
            },
            "s": {
                "type": 0.0,
                "description": "Regularity index",
                "default": 0.0
            },
            "p": {
                "type": "",
                "description": "Integrability exponent, a real >= 1 or `inf`",
                "default": "2"
            },
            "r": {
                "type": "",
                "description": "Summability exponent, a real >= 1 or `inf`",
                "default": "1"
            },
            "homogeneous": {
                "type": False,
                "description": "Measure in the homogeneous space",
                "default": False
            },
        },
        "description":
            "Besov norm of one field component with its weighted dyadic block norms.",
    }
    Symbol = {
        "name": LabCommandName.Symbol,
        "required": [],
        "params": {
            "a": {
                "type": 0.0,
                "description": "Wave speed a > 0",
                "default": 1.0
            },
            "gamma": {
                "type": 0.0,
                "description": "Damping coefficient gamma > 0",
                "default": 1.0
            },
            "xi_min": {
                "type": 0.0,
                "description": "Smallest frequency of the log-spaced sweep",
                "default": SweepDefaults.XI_MIN
            },
            "xi_max": {
                "type": 0.0,
                "description": "Largest frequency of the log-spaced sweep",
                "default": SweepDefaults.XI_MAX
            },
            "points": {
                "type": 0,
                "description": "Number of sweep frequencies",
                "min": 100,
                "default": SweepDefaults.POINTS
            },
            "eta": {
                "type": "",
                "description": "Dissipation rate profile",
                "options": list(ETA_KIND.values()),
                "default": ETA_KIND.AUTO
            },
            "out": {
                "type": "",
                "description": "JSON report file",
                "default": None
            },
            "csv": {
                "type": "",
                "description": "Optional CSV file with per-frequency columns",
                "default": None
            },
        },
        "description":
            "Eigenvalue sweep of the Fourier symbol and fit of the best constant c "
            "in Re λ(iξ) <= −c η(ξ).",
    }
    Evolve = {
        "name": LabCommandName.Evolve,
        "required": ["config", "out"],
        "params": {
            "mode": {
                "type": "",
                "description": "Evolution path, the configured mode when omitted",
                "options": list(EVOLVE_MODE.values()),
                "default": None
            },
            "config": {
                "type": "",
                "description": "Experiment configuration JSON file",
                "default": None
            },
            "out": {
                "type": "",
                "description": "Trajectory output directory",
                "default": None
            },
            "energies": {
                "type": "",
                "description": "Optional energy ledger CSV file",
                "default": None
            },
        },
        "description":
            "Evolve configured initial data and write a trajectory directory.",
    }
    Energy = {
        "name": LabCommandName.Energy,
        "required": ["input"],
        "params": {
            "input": {
                "type": "",
                "description": "Trajectory directory written by `evolve`",
                "default": None
            },
            "out": {
                "type": "",
                "description": "Energy ledger CSV file",
                "default": None
            },
        },
        "description":
            "Energy ledger, square-root energy bound and energy/dissipation norms "
            "of a stored trajectory.",
    }
    Decay = {
        "name": LabCommandName.Decay,
        "required": ["config"],
        "params": {
            "config": {
                "type": "",
                "description": "Experiment configuration JSON file",
                "default": None
            },
            "out": {
                "type": "",
                "description": "Decay report CSV file",
                "default": None
            },
        },
        "description":
            "Fit log-log decay slopes of the configured norms and compare them "
            "with the predicted exponents.",
    }
    Inequalities = {
        "name": LabCommandName.Inequalities,
        "required": [],
        "params": {
            "length": {
                "type": 0.0,
                "description": "Periodic domain length",
                "default": 64.0
            },
            "n": {
                "type": 0,
                "description": "Number of grid points, a power of 2",
                "min": 8,
                "default": 1024
            },
            "count": {
                "type": 0,
                "description": "Number of random test fields",
                "min": 2,
                "default": 100
            },
            "seed": {
                "type": 0,
                "description": "Random seed",
                "default": 0
            },
        },
        "description":
            "Fitted constants of the Bernstein, embedding, product and commutator "
            "inequalities on random fields.",
    }

    # ...............................................
    @classmethod
    def get(cls, name):
        """Return the metadata of a command by name.

        Args:
            name (str): a LabCommandName value.

        Returns:
            dict of command metadata
        """
        return {
            LabCommandName.Besov: cls.Besov,
            LabCommandName.Symbol: cls.Symbol,
            LabCommandName.Evolve: cls.Evolve,
            LabCommandName.Energy: cls.Energy,
            LabCommandName.Decay: cls.Decay,
            LabCommandName.Inequalities: cls.Inequalities,
        }[name]


# .............................................................................
class LabOutput(object):
    """Response type for a lab command."""
    service: str
    description: str = ""
    output: dict = {}
    errors: dict = {}

    # ...............................................
    def __init__(self, service, description=None, output=None, errors=None):
        """Constructor.

        Args:
            service: command this object is responding to.
            description: Description of the computation in this response.
            output: Results (dict) in this response.
            errors: Errors encountered when generating this response.
        """
        if errors is None:
            errors = {}
        if description is None:
            description = ""
        if output is None:
            output = {}
        # Dictionary is json-serializable
        self._response = {
            LabKey.SERVICE: service,
            LabKey.DESCRIPTION: description,
            LabKey.OUTPUT: output,
            LabKey.ERRORS: errors
        }

    # ...............................................
    @property
    def response(self):
        """Return the command response.

        Returns:
            the response dictionary
        """
        return self._response

    # ...............................................
    @property
    def has_errors(self):
        """Return True when the response carries `error` messages.

        Returns:
            bool
        """
        return bool(self._response[LabKey.ERRORS].get("error"))

    # ...............................................
    def to_json(self):
        """Return the response as a JSON string.

        Returns:
            str
        """
        return json.dumps(self._response, indent=2, default=str)

    # ....................................
    @classmethod
    def print_output(cls, response_dict, do_print_output=False):
        """Print a formatted string of the elements in a command response.

        Args:
            response_dict: lab_app.common.lab_type.LabOutput._response dictionary
            do_print_output: True to print each element of the output.
        """
        print("*** Lab output ***")
        for name, attelt in response_dict.items():
            if name == LabKey.OUTPUT and do_print_output:
                print(f"{name}: ")
                for key, val in attelt.items():
                    print(f"  {key}: {val}")
            else:
                print(f"{name}: {attelt}")
