# mastergraph/api/routes/networks.py
from typing import Optional
import logging

from fastapi import APIRouter, File, Form, HTTPException, UploadFile, status

from mastergraph.exceptions import MasterGraphError
from mastergraph.schemas.dynamics import EmpiricalDistribution
from mastergraph.schemas.network import NetworkFormat
from mastergraph.schemas.report import AnalysisReport, EvolveReport, SteadyReport, TreesReport
from mastergraph.services.analysis import NetworkAnalysisService, infer_format, resolve_p0, resolve_start

logger = logging.getLogger(__name__)

router = APIRouter()


async def _load_service(
    network: UploadFile,
    format: Optional[NetworkFormat],
    cap: Optional[int],
) -> NetworkAnalysisService:
    raw = await network.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail="Network file must be UTF-8 text"
        )
    fmt = infer_format(network.filename or "", format.value if format else None)
    return NetworkAnalysisService.from_text(text, fmt, cap=cap)


def _domain_error(e: MasterGraphError, action: str) -> HTTPException:
    logger.warning(f"{action} failed: {str(e)}")
    return HTTPException(status_code=e.status_code, detail=str(e))


@router.post(
    "/analyze",
    response_model=AnalysisReport,
    response_model_by_alias=True,
    response_model_exclude_none=True,
    summary="Полный анализ сети",
    response_description="Стоки, базис стационарных состояний, сертификат и предел"
)
async def analyze_network(
    network: UploadFile = File(..., description="Файл сети (edge_list или json)"),
    format: Optional[NetworkFormat] = Form(None),
    p0: Optional[str] = Form(None, description="uniform | state:LABEL | JSON"),
    cap: Optional[int] = Form(None),
):
    """
    Анализ долгосрочного поведения уравнения Мастера.

    - **network**: файл сети
    - **p0**: начальное распределение, если нужен предел
    - **cap**: предел перебора входящих деревьев
    """
    try:
        service = await _load_service(network, format, cap)
        initial = resolve_p0(service.net, p0) if p0 is not None else None
        return service.analyze(initial)
    except MasterGraphError as e:
        raise _domain_error(e, "analyze")
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in analyze: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error during network analysis"
        )


@router.post(
    "/steady",
    response_model=SteadyReport,
    response_model_by_alias=True,
    response_model_exclude_none=True,
    summary="Базис стационарных состояний"
)
async def steady_states(
    network: UploadFile = File(...),
    format: Optional[NetworkFormat] = Form(None),
    p0: Optional[str] = Form(None),
    cap: Optional[int] = Form(None),
):
    try:
        service = await _load_service(network, format, cap)
        initial = resolve_p0(service.net, p0) if p0 is not None else None
        return service.steady(initial)
    except MasterGraphError as e:
        raise _domain_error(e, "steady")
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in steady: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error during steady state computation"
        )


@router.post(
    "/trees",
    response_model=TreesReport,
    response_model_exclude_none=True,
    summary="Входящие деревья"
)
async def in_trees(
    network: UploadFile = File(...),
    format: Optional[NetworkFormat] = Form(None),
    root: Optional[str] = Form(None, description="Метка корня; по умолчанию все состояния"),
    cap: Optional[int] = Form(None),
):
    try:
        service = await _load_service(network, format, cap)
        return service.trees(root)
    except MasterGraphError as e:
        raise _domain_error(e, "trees")
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in trees: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error during tree enumeration"
        )


@router.post(
    "/evolve",
    response_model=EvolveReport,
    summary="Распределение в момент t"
)
async def evolve_network(
    network: UploadFile = File(...),
    t: float = Form(..., description="Момент времени t >= 0"),
    format: Optional[NetworkFormat] = Form(None),
    p0: str = Form("uniform"),
):
    try:
        service = await _load_service(network, format, None)
        return service.evolve(resolve_p0(service.net, p0), t)
    except MasterGraphError as e:
        raise _domain_error(e, "evolve")
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in evolve: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error during time evolution"
        )


@router.post(
    "/simulate",
    response_model=EmpiricalDistribution,
    summary="Оценка p_T методом Гиллеспи"
)
async def simulate_network(
    network: UploadFile = File(...),
    T: float = Form(..., description="Горизонт T > 0"),
    n: int = Form(..., description="Число траекторий"),
    seed: int = Form(...),
    start: str = Form(..., description="Метка состояния или распределение"),
    format: Optional[NetworkFormat] = Form(None),
):
    try:
        service = await _load_service(network, format, None)
        return service.simulate(T, n, seed, resolve_start(service.net, start))
    except MasterGraphError as e:
        raise _domain_error(e, "simulate")
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in simulate: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error during simulation"
        )
