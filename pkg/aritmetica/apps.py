# aritmetica/apps.py
import sys

from django.apps import AppConfig


class AritmeticaConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "aritmetica"
    verbose_name = "Aritmética / Alturas e Órbitas"

    def ready(self):
        # coordenadas de órbita passam de 4300 dígitos; o limite fica com MAX_DIGITS
        if hasattr(sys, "set_int_max_str_digits"):
            sys.set_int_max_str_digits(0)
