"""Command fitting the constants of the harmonic-analysis inequalities."""
from lab_app.common.base import _LabService
from lab_app.common.lab_type import LabCommand, LabOutput

from timpy.tools.spectral.errors import TimoshenkoError
from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.inequalities import run_inequality_battery
from timpy.tools.spectral.littlewood_paley import build_filter_bank
from timpy.tools.util.utils import add_errinfo, errinfo_from_exception


# .............................................................................
class InequalitiesSvc(_LabService):
    """Fitted constants of the Besov-space inequalities on random fields."""
    COMMAND = LabCommand.Inequalities

    # ...............................................
    @classmethod
    def fit_constants(cls, logger=None, **kwargs):
        """Run the inequality battery.

        Args:
            logger (timpy.tools.util.logtools.Logger): optional logger.
            **kwargs: length, n, count and seed.

        Returns:
            lab_app.common.lab_type.LabOutput: output holds the fitted constants;
                a failed Bernstein bound or a monotonicity violation is an error.
        """
        output = {}
        try:
            params, errinfo = cls._standardize_params(**kwargs)
            bank = build_filter_bank(Grid(params["length"], params["n"]))
            output = run_inequality_battery(
                bank, count=params["count"], seed=params["seed"], logger=logger)
        except TimoshenkoError as e:
            errinfo = errinfo_from_exception(e)
        else:
            if not (output["bernstein_within"]
                    and output["low_frequency_bernstein_within"]):
                errinfo = add_errinfo(errinfo, "error", "Bernstein bounds violated")
            if output["monotonicity_violations"]:
                errinfo = add_errinfo(
                    errinfo, "error",
                    f"{output['monotonicity_violations']} monotonicity violations")
        return LabOutput(
            cls.name(), description=cls.COMMAND["description"], output=output,
            errors=errinfo)
