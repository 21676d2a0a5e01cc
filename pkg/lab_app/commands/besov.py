"""Command computing the Besov norm of one component of a stored field."""
from lab_app.common.base import _LabService
from lab_app.common.lab_type import LabCommand, LabOutput

from timpy.tools.spectral.errors import TimoshenkoError
from timpy.tools.spectral.littlewood_paley import (
    BesovSpec, besov_norm, block_norm_table, build_filter_bank)
from timpy.tools.spectral.model import StateField
from timpy.tools.util.utils import errinfo_from_exception


# .............................................................................
class BesovSvc(_LabService):
    """Besov norm and weighted dyadic block norms of a field component."""
    COMMAND = LabCommand.Besov

    # ...............................................
    @classmethod
    def compute_norm(cls, logger=None, **kwargs):
        """Return the norm of the requested component.

        Args:
            logger (timpy.tools.util.logtools.Logger): optional logger.
            **kwargs: input, component, s, p, r and homogeneous.

        Returns:
            tuple (lab_app.common.lab_type.LabOutput, pandas.DataFrame or None):
                output holds `norm` and `space`; the table holds columns q and
                weighted_norm.
        """
        table = None
        output = {}
        try:
            params, errinfo = cls._standardize_params(**kwargs)
            field = StateField.read_csv(params["input"])
            spec = BesovSpec(
                params["s"], params["p"], params["r"],
                homogeneous=params["homogeneous"])
            bank = build_filter_bank(field.grid)
            samples = field.component(params["component"])
            norm = besov_norm(bank, samples, spec, vector=False)
            table = block_norm_table(bank, samples, spec, vector=False)
        except (TimoshenkoError, OSError, ValueError) as e:
            errinfo = errinfo_from_exception(e)
        else:
            output = {
                "norm": norm,
                "space": repr(spec),
                "component": params["component"],
            }
            cls._logme(
                logger, f"{params['component']} of {params['input']} in {spec}: {norm}")
        return LabOutput(
            cls.name(), description=cls.COMMAND["description"], output=output,
            errors=errinfo), table
