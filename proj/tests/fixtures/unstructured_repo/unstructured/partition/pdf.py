from typing import List

from unstructured.documents.elements import Element


def partition_pdf(filename: str = "",
    pages = [
    return pages
