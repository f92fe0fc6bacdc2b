"""
Django settings for alturas project.
App 'aritmetica' (alturas, órbitas e dependência multiplicativa) + CLI via manage.py.
"""
from pathlib import Path
import os

# =========================
# .env (carrega logo após BASE_DIR)
# =========================
try:
    from dotenv import load_dotenv
except ImportError:
    load_dotenv = None

BASE_DIR = Path(__file__).resolve().parent.parent

if load_dotenv:
    load_dotenv(BASE_DIR / ".env")


# =========================
# Utils
# =========================
def get_list(env_var: str, default=None):
    """Lê uma env e retorna lista separada por vírgula (com trim)."""
    val = os.getenv(env_var)
    if val:
        return [item.strip() for item in val.split(",") if item.strip()]
    return default or []


def get_int(env_var: str, default: int) -> int:
    """Lê uma env inteira (só dígitos); vazia ou ausente cai no default."""
    val = os.getenv(env_var)
    if val is None or not val.strip():
        return default
    return int(val.strip())


# =========================
# Segurança / Debug
# =========================
SECRET_KEY = os.getenv(
    "DJANGO_SECRET_KEY",
    "django-insecure-alturas-somente-desenvolvimento"  # troque em produção
)
DEBUG = os.getenv("DEBUG", "1") == "1"

ALLOWED_HOSTS = get_list("ALLOWED_HOSTS", ["localhost", "127.0.0.1"])


# =========================
# Apps
# =========================
BASE_DJANGO_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
]
LOCAL_APPS = ["aritmetica.apps.AritmeticaConfig"]

INSTALLED_APPS = BASE_DJANGO_APPS + LOCAL_APPS


# =========================
# Middleware
# =========================
MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "alturas.urls"


# =========================
# Templates (só o admin usa)
# =========================
TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]


# =========================
# Banco de Dados (relatórios de varredura salvos com --save)
# =========================
import dj_database_url  # type: ignore

DATABASE_URL = os.getenv("DATABASE_URL", "")
if DATABASE_URL:
    DATABASES = {
        "default": dj_database_url.parse(
            DATABASE_URL,
            conn_max_age=600,
            conn_health_checks=True,
        )
    }
else:
    DATABASES = {
        "default": {
            "ENGINE": "django.db.backends.sqlite3",
            "NAME": BASE_DIR / "db.sqlite3",
        }
    }


# =========================
# i18n / timezone
# =========================
LANGUAGE_CODE = "pt-br"
TIME_ZONE = "America/Araguaina"
USE_I18N = True
USE_TZ = True


# =========================
# Estáticos
# =========================
STATIC_URL = "/static/"
STATIC_ROOT = BASE_DIR / "staticfiles"


# =========================
# Parâmetros numéricos do app aritmetica
# =========================
ARITMETICA = {
    # fatoração: divisão por tentativa até este limite, depois rho
    "TRIAL_DIVISION_BOUND": get_int("ARITMETICA_TRIAL_DIVISION_BOUND", 10**6),
    # teto de dígitos decimais antes de abortar com erro de orçamento
    "MAX_DIGITS": get_int("ARITMETICA_MAX_DIGITS", 5000),
    # B da busca de testemunhas (pares (r, s) no reticulado projetado)
    "KERNEL_ENUMERATION_BOUND": get_int("ARITMETICA_KERNEL_ENUMERATION_BOUND", 25),
    # caixa de coeficientes para relações vetoriais
    "VECTOR_ENUMERATION_BOUND": get_int("ARITMETICA_VECTOR_ENUMERATION_BOUND", 4),
    "MORPHISM_CHECK_PRIMES": [int(p) for p in get_list("ARITMETICA_MORPHISM_CHECK_PRIMES",
                                                      ["2", "3", "5", "7", "11", "13", "17"])],
    "EXAMPLE_MAX_RETRIES": get_int("ARITMETICA_EXAMPLE_MAX_RETRIES", 200),
    "CANONICAL_MAX_STAGES": get_int("ARITMETICA_CANONICAL_MAX_STAGES", 200),
    # teto de dígitos próprio do estimador de altura canônica (estágios finais crescem como deg_n)
    "CANONICAL_MAX_DIGITS": get_int("ARITMETICA_CANONICAL_MAX_DIGITS", 100_000),
    # fatoração parcial (alturas locais em todos os lugares): só divisão por tentativa até aqui
    "PARTIAL_FACTOR_BOUND": get_int("ARITMETICA_PARTIAL_FACTOR_BOUND", 2**15),
}


# =========================
# Logging básico (console)
# =========================
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simples": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {"console": {"class": "logging.StreamHandler", "formatter": "simples"}},
    "root": {"handlers": ["console"], "level": "WARNING"},
    "loggers": {
        "django": {"handlers": ["console"], "level": "INFO", "propagate": False},
        "aritmetica": {
            "handlers": ["console"],
            "level": os.getenv("ARITMETICA_LOG_LEVEL", "WARNING"),
            "propagate": False,
        },
    },
}


# =========================
# Campo id padrão
# =========================
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
