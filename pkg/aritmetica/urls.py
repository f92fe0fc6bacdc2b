# aritmetica/urls.py
from django.urls import path

from . import views

app_name = "aritmetica"

urlpatterns = [
    path("relatorios/", views.relatorios, name="relatorios"),
    path("relatorios/<int:pk>/", views.relatorio_detalhe, name="relatorio_detalhe"),
]
