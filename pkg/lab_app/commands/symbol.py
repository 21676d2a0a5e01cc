"""Command sweeping the eigenvalues of the Fourier symbol."""
from lab_app.common.base import _LabService
from lab_app.common.lab_type import LabCommand, LabOutput

from timpy.tools.spectral.errors import TimoshenkoError
from timpy.tools.spectral.model import make_params
from timpy.tools.spectral.symbol import dissipative_fit, standard_xi_grid
from timpy.tools.util.utils import add_errinfo, errinfo_from_exception


# .............................................................................
class SymbolSvc(_LabService):
    """Dissipative structure of the symbol over a log-spaced frequency sweep."""
    COMMAND = LabCommand.Symbol

    # ...............................................
    @classmethod
    def analyze(cls, logger=None, **kwargs):
        """Fit the dissipative constant and write the reports.

        Args:
            logger (timpy.tools.util.logtools.Logger): optional logger.
            **kwargs: a, gamma, xi_min, xi_max, points, eta, out and csv.

        Returns:
            lab_app.common.lab_type.LabOutput: output holds c_best, pass,
                ratio_max, the profile used and the trace residual.  A sweep with
                c_best <= 0 is reported as an error.
        """
        output = {}
        try:
            params, errinfo = cls._standardize_params(**kwargs)
            model = make_params(params["a"], params["gamma"])
            xi = standard_xi_grid(params["xi_min"], params["xi_max"], params["points"])
            report = dissipative_fit(model, xi, eta_kind=params["eta"], logger=logger)
            if params["out"] is not None:
                report.write_json(params["out"])
                cls._logme(logger, f"Wrote symbol report {params['out']}")
            if params["csv"] is not None:
                report.write_csv(params["csv"])
        except (TimoshenkoError, OSError) as e:
            errinfo = errinfo_from_exception(e)
        else:
            output = {
                "a": report.a,
                "gamma": report.gamma,
                "eta": report.eta_kind,
                "c_best": report.c_best,
                "ratio_max": report.ratio_max,
                "trace_residual": report.trace_residual(),
                "pass": report.passed,
            }
            if not report.passed:
                errinfo = add_errinfo(
                    errinfo, "error",
                    f"No positive dissipative constant, c_best={report.c_best}")
        return LabOutput(
            cls.name(), description=cls.COMMAND["description"], output=output,
            errors=errinfo)
