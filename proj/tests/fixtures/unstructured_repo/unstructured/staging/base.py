import csv
import io
from typing import Dict, List

import numpy as np

from ..documents.elements import Text


def convert_to_isd(elements: List[Text]) -> List[Dict[str, str]]:
    """Represents the document elements as an Initial Structured Document (ISD)."""
    return [{"text": el.text, "type": el.category} for el in elements]


def convert_to_csv(elements: List[Text]) -> str:
    rows = convert_to_isd(elements)
    with io.StringIO() as buffer:
        writer = csv.DictWriter(buffer, fieldnames=["text", "type"])
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()


def convert_to_dataframe(elements: List[Text]):
    import pandas as pd

    return pd.DataFrame.from_dict(convert_to_isd(elements))


def text_lengths(elements: List[Text]) -> "np.ndarray":
    return np.array([len(el.text) for el in elements])
