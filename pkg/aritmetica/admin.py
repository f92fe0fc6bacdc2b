from django.contrib import admin

from .models import ScanRun

# =========================
# Branding do Admin
# =========================
admin.site.site_header = "Alturas e Órbitas"
admin.site.site_title = "Admin • Aritmética"
admin.site.index_title = "Execuções registradas"
admin.ModelAdmin.empty_value_display = "-"


@admin.register(ScanRun)
class ScanRunAdmin(admin.ModelAdmin):
    list_display = ("id", "kind", "random_seed", "hits", "budget_exhausted", "created_at")
    list_filter = ("kind", "budget_exhausted")
    search_fields = ("digest",)
    readonly_fields = ("digest", "created_at")
    ordering = ("-created_at",)
