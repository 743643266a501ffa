"""
JSON file formats.

Scalars are "p/q" strings (JSON integers are accepted on input). A jet is the
array of its coefficients [c0, c1, ...]; shorter arrays are zero padded.

    QuotPoint file     {r, d, K, models: [{point, matrix: 2r×2r arrays of jets}], seed?, tool_version?}
    Lagrangian tuple   {points: [...], lagrangians: [2r×r matrices]}
    matrix file        {matrix: [[...]]}
"""
# Importing dependencies.
import json
import logging
from pathlib import Path
from typing import Annotated, Any, Dict, List, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, BeforeValidator, Field, ValidationError

from ..algebra.exactnum import Jet, parse_scalar, scalar_to_str
from ..algebra.linalg import JetMatrix, ScalarMatrix
from ..config import Config
from ..errors import InputFormatError, NotLagrangianError
from ..geometry.local_model import LocalModel, QuotPoint, SupportPoint
from ..geometry.symplectic import LagrangianSubspace, standard_form

logger = logging.getLogger(__name__)

Document = TypeVar("Document", bound=BaseModel)


def _canonical_scalar(value: Any) -> str:
    try:
        return scalar_to_str(parse_scalar(value))
    except InputFormatError as e:
        raise ValueError(str(e)) from e


ScalarText = Annotated[str, BeforeValidator(_canonical_scalar)]


class LocalModelDocument(BaseModel):
    point: ScalarText
    matrix: List[List[List[ScalarText]]]


class QuotPointDocument(BaseModel):
    r: int = Field(ge=1)
    d: int = Field(ge=1)
    K: int = Field(ge=1)
    models: List[LocalModelDocument]
    seed: Optional[int] = None
    tool_version: Optional[str] = None


class LagrangianTupleDocument(BaseModel):
    points: Optional[List[ScalarText]] = None
    lagrangians: Optional[List[List[List[ScalarText]]]] = None


class MatrixDocument(BaseModel):
    matrix: List[List[ScalarText]]


# ------------------------------------------------------------------
# Parsing
# ------------------------------------------------------------------
def parse_document(text: str, model: Type[Document], source: str = "<input>") -> Document:
    """
    Parses JSON text into a pydantic document.

    Raises:
        InputFormatError: with "line L, column C" for syntax errors and the
            field path for schema errors
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(e.msg, f"{source}: line {e.lineno}, column {e.colno}") from e
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        path = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise InputFormatError(first["msg"], f"{source}: field {path}") from e


def read_document(path: Union[str, Path], model: Type[Document]) -> Document:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError(f"cannot read file: {e.strerror}", str(path)) from e
    return parse_document(text, model, str(path))


def _jet_from_array(values: List[str], order: int, where: str) -> Jet:
    if not values:
        raise InputFormatError("empty coefficient array", where)
    if len(values) > order:
        raise InputFormatError(f"{len(values)} coefficients exceed the truncation order {order}", where)
    return Jet.of([parse_scalar(v) for v in values], order)


def quot_point_from_document(doc: QuotPointDocument) -> QuotPoint:
    """
    Builds a QuotPoint, zero padding every jet to the configured order.

    Raises:
        InputFormatError: K below 2rd + 1, or a matrix of the wrong shape
        RepeatedSupportError: two models share a point
    """
    safe = 2 * doc.r * doc.d + 1
    if doc.K < safe:
        raise InputFormatError(f"K={doc.K} is below the safe order {safe}", "field K")
    order = max(doc.K, Config.truncation_order(doc.r, doc.d))
    n = 2 * doc.r
    models = []
    for index, m in enumerate(doc.models):
        where = f"field models.{index}.matrix"
        if len(m.matrix) != n or any(len(row) != n for row in m.matrix):
            raise InputFormatError(f"expected a {n}x{n} matrix", where)
        rows = [
            [_jet_from_array(entry, doc.K, f"{where}.{i}.{j}") for j, entry in enumerate(row)]
            for i, row in enumerate(m.matrix)
        ]
        models.append(LocalModel(SupportPoint(parse_scalar(m.point)), JetMatrix.from_rows(rows, doc.K)))
    q = QuotPoint(doc.r, doc.d, tuple(models))
    if order > doc.K:
        logger.debug("--- IO: padding K=%d to %d ---", doc.K, order)
        q = q.with_order(order)
    return q


def load_quot_point(path: Union[str, Path]) -> Tuple[QuotPoint, Optional[int]]:
    """
    Returns:
        (point, seed): the seed recorded in the file, if any
    """
    doc = read_document(path, QuotPointDocument)
    return quot_point_from_document(doc), doc.seed


def _scalar_matrix(rows: List[List[str]], where: str) -> ScalarMatrix:
    if not rows or any(len(row) != len(rows[0]) for row in rows):
        raise InputFormatError("matrix rows must be non-empty and of equal length", where)
    return ScalarMatrix.from_rows([[parse_scalar(x) for x in row] for row in rows], len(rows[0]))


def lagrangian_tuple_from_documents(
        points_doc: LagrangianTupleDocument,
        lagrangians_doc: LagrangianTupleDocument,
) -> Tuple[List[SupportPoint], List[LagrangianSubspace]]:
    """
    Raises:
        InputFormatError: missing fields, shape problems or mismatched counts
        NotLagrangianError: a matrix fails the Lagrangian test (index attached)
    """
    if points_doc.points is None:
        raise InputFormatError("missing points", "field points")
    if lagrangians_doc.lagrangians is None:
        raise InputFormatError("missing lagrangians", "field lagrangians")
    points = [SupportPoint(parse_scalar(p)) for p in points_doc.points]
    matrices = [
        _scalar_matrix(m, f"field lagrangians.{i}") for i, m in enumerate(lagrangians_doc.lagrangians)
    ]
    if len(points) != len(matrices):
        raise InputFormatError(f"{len(points)} points but {len(matrices)} lagrangians", "field lagrangians")
    if not matrices:
        raise InputFormatError("at least one Lagrangian is required", "field lagrangians")
    if matrices[0].rows % 2:
        raise InputFormatError("Lagrangian matrices need an even number of rows", "field lagrangians.0")
    space = standard_form(matrices[0].rows // 2)
    subspaces = []
    for index, basis in enumerate(matrices):
        try:
            subspaces.append(LagrangianSubspace.from_basis(space, basis))
        except NotLagrangianError as e:
            raise NotLagrangianError(f"lagrangian {index}: {e}", index=index) from e
    return points, subspaces


def load_lagrangian_tuple(
        points_path: Union[str, Path],
        lagrangians_path: Union[str, Path],
) -> Tuple[List[SupportPoint], List[LagrangianSubspace]]:
    points_doc = read_document(points_path, LagrangianTupleDocument)
    lagrangians_doc = (
        points_doc if Path(points_path) == Path(lagrangians_path)
        else read_document(lagrangians_path, LagrangianTupleDocument)
    )
    return lagrangian_tuple_from_documents(points_doc, lagrangians_doc)


def load_matrix(path: Union[str, Path]) -> ScalarMatrix:
    return _scalar_matrix(read_document(path, MatrixDocument).matrix, "field matrix")


# ------------------------------------------------------------------
# Writing
# ------------------------------------------------------------------
def _trimmed(coefficients: List[str]) -> List[str]:
    end = len(coefficients)
    while end > 1 and coefficients[end - 1] == "0":
        end -= 1
    return coefficients[:end]


def provenance(r: int, d: Optional[int], order: Optional[int], seed: Optional[int]) -> Dict[str, Any]:
    """The {r, d, K, seed, tool_version} header every output document carries."""
    return {"r": r, "d": d, "K": order, "seed": seed, "tool_version": Config.TOOL_VERSION}


def quot_point_to_document(q: QuotPoint, seed: Optional[int] = None) -> Dict[str, Any]:
    models = [
        {
            "point": str(m.point),
            "matrix": [[_trimmed(entry) for entry in row] for row in m.matrix.to_str_arrays()],
        }
        for m in q.models
    ]
    return {**provenance(q.r, q.d, q.order, seed), "models": models}


def dump_json(document: Dict[str, Any]) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
