from pathlib import Path
import os

BASE_DIR = Path(__file__).resolve().parent.parent
SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "django-insecure-key-placeholder")
DEBUG = bool(int(os.getenv("DJANGO_DEBUG", "1")))
ALLOWED_HOSTS = ["*"]
# Application definition
INSTALLED_APPS = [
    "cfnum",
]

MIDDLEWARE = [
    "django.middleware.common.CommonMiddleware",
]

ROOT_URLCONF = "core.urls"

WSGI_APPLICATION = "core.wsgi.application"

# Nada é persistido: tudo é calculado sob demanda.
DATABASES = {}

# Internacionalização
LANGUAGE_CODE = "pt-br"
TIME_ZONE = "America/Sao_Paulo"
USE_I18N = True
USE_TZ = True

# --- CONFIGURAÇÕES DO CÁLCULO ---
# Ordem de truncamento das séries; 0 (ou ausente) significa 2*n + 2.
CFNUM_ORDER = int(os.getenv("CFNUM_ORDER", "0")) or None
# Quantidade padrão de workers do comando verify.
CFNUM_VERIFY_JOBS = max(1, int(os.getenv("CFNUM_VERIFY_JOBS", "1")))

# --- LOGGING ---
# stdout fica reservado para os dados; diagnósticos vão para stderr.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "simple",
        },
    },
    "loggers": {
        "cfnum": {
            "handlers": ["console"],
            "level": os.getenv("CFNUM_LOG_LEVEL", "WARNING").upper(),
            "propagate": False,
        },
    },
}
