#!/usr/bin/env python
# encoding: utf-8

"""Load bench reports into Pandas_ dataframes.

This extension requires `pandas` to be installed. Each report becomes one row;
event counts are flattened into `M`, `X`, `I`, `D` and `G` columns.

.. _Pandas: http://pandas.pydata.org/

"""

from ..alignment import OPS
from ..report import RunReport
from ..util import DsaError
import io
import json
import pandas as pd

#: Columns of the dataframes returned by this module, in order.
COLUMNS = (
  ('name', 'distance') + OPS + ('G', 'total_error', 'passed', 'work',
  'wall_time', 'peak_memory')
)


def reports_to_dataframe(reports):
  """Dataframe with one row per report.

  :param reports: Iterable of :class:`~dsalign.report.RunReport`.

  """
  records = []
  for report in reports:
    record = report.to_dict()
    record.update(record.pop('counts'))
    records.append(record)
  return pd.DataFrame.from_records(records, columns=list(COLUMNS))


def read_reports(path):
  """Read a JSON bench output file, as written by `dsalign bench --json`.

  :param path: Local path.

  """
  with io.open(path, encoding='utf-8') as reader:
    try:
      objs = json.load(reader)
    except ValueError:
      raise DsaError('Invalid report file %r.', path)
  if isinstance(objs, dict):
    objs = [objs]
  return reports_to_dataframe(RunReport.from_dict(obj) for obj in objs)
