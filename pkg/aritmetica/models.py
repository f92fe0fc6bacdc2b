from django.core.exceptions import ValidationError
from django.db import models


# =======================
# Execuções de varredura
# =======================
class ScanRun(models.Model):
    class Kind(models.TextChoices):
        SCAN_T1 = "scan-t1", "Dependência φ(P)^r = u·ψ(P)^s"
        SCAN_T2 = "scan-t2", "Dependência com r, s fixos"
        HYP_SCAN = "hyp-scan", "Quase-integralidade"
        CONSTANTS = "constants", "Constantes empíricas"

    kind = models.CharField(max_length=16, choices=Kind.choices)
    random_seed = models.BigIntegerField(default=0)
    config_json = models.JSONField()
    report_json = models.JSONField()
    hits = models.PositiveIntegerField(default=0)
    budget_exhausted = models.BooleanField(default=False)
    digest = models.CharField("sha256 do relatório", max_length=64)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        verbose_name = "Execução de varredura"
        verbose_name_plural = "Execuções de varredura"
        ordering = ("-created_at", "-id")
        indexes = [models.Index(fields=["kind", "created_at"], name="scanrun_kind_created_idx")]

    def clean(self):
        if len(self.digest or "") != 64:
            raise ValidationError({"digest": "Digest sha256 deve ter 64 caracteres hexadecimais."})
        if isinstance(self.report_json, dict) and self.report_json.get("kind") not in (None, self.kind):
            raise ValidationError({"kind": "Tipo difere do registrado no relatório."})

    def save(self, *args, **kwargs):
        self.full_clean()
        return super().save(*args, **kwargs)

    def summary(self) -> dict:
        return {
            "id": self.pk,
            "kind": self.kind,
            "random_seed": self.random_seed,
            "hits": self.hits,
            "budget_exhausted": self.budget_exhausted,
            "digest": self.digest,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }

    def __str__(self):
        return f"{self.get_kind_display()} #{self.pk} ({self.hits} acertos)"
