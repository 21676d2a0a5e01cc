"""Command fitting decay rates of a configured experiment."""
import os

from lab_app.common.base import _LabService
from lab_app.common.lab_type import LabCommand, LabOutput

from timpy.tools.spectral.decay import reports_to_dataframe, run_suite, write_reports_csv
from timpy.tools.spectral.errors import TimoshenkoError
from timpy.tools.spectral.experiment import ExperimentConfig
from timpy.tools.util.utils import add_errinfo, errinfo_from_exception


# .............................................................................
def trend_filename(out):
    """Return the regularity-loss trend file next to a report CSV."""
    return f"{os.path.splitext(out)[0]}_trend.csv"


# .............................................................................
class DecaySvc(_LabService):
    """Decay-rate suite of one experiment configuration."""
    COMMAND = LabCommand.Decay

    # ...............................................
    @classmethod
    def fit_rates(cls, logger=None, **kwargs):
        """Run the suite and write the report CSV.

        Args:
            logger (timpy.tools.util.logtools.Logger): optional logger.
            **kwargs: config and out.

        Returns:
            tuple (lab_app.common.lab_type.LabOutput, bool): the response with one
                record per fitted norm, plus the regularity-loss trend for a != 1,
                and True iff every fit passed.
        """
        output = {}
        all_passed = False
        try:
            params, errinfo = cls._standardize_params(**kwargs)
            config = ExperimentConfig.init_from_file(params["config"])
            reports = run_suite(config, logger=logger)
            if params["out"] is not None:
                write_reports_csv(reports, params["out"])
                cls._logme(logger, f"Wrote {len(reports)} fits to {params['out']}")
                if reports.trend is not None:
                    trend_file = trend_filename(params["out"])
                    reports.trend.to_csv(trend_file, index=False)
                    cls._logme(logger, f"Wrote regularity-loss trend to {trend_file}")
        except (TimoshenkoError, OSError, ValueError, KeyError) as e:
            errinfo = errinfo_from_exception(e)
        else:
            all_passed = reports.passed
            output = {
                "label": config.label,
                "records": reports_to_dataframe(reports).to_dict(orient="records"),
                "pass": all_passed,
            }
            if reports.trend is not None:
                output["regularity_trend"] = reports.trend.to_dict(orient="records")
            for r in reports:
                if not r.passed:
                    errinfo = add_errinfo(errinfo, "warning", f"Fit failed: {r}")
        return LabOutput(
            cls.name(), description=cls.COMMAND["description"], output=output,
            errors=errinfo), all_passed
