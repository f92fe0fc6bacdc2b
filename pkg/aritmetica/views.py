# aritmetica/views.py
from django.http import JsonResponse
from django.shortcuts import get_object_or_404
from django.views.decorators.http import require_GET

from .models import ScanRun


@require_GET
def relatorios(request):
    """Lista as execuções gravadas; ?kind= filtra pelo tipo."""
    qs = ScanRun.objects.all()
    kind = request.GET.get("kind")
    if kind:
        qs = qs.filter(kind=kind)
    return JsonResponse({"runs": [run.summary() for run in qs]})


@require_GET
def relatorio_detalhe(request, pk: int):
    run = get_object_or_404(ScanRun, pk=pk)
    return JsonResponse({**run.summary(), "config": run.config_json, "report": run.report_json})
