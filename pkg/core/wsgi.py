"""
Configuração WSGI do projeto cfnum.

Expõe o callable ``application`` que serve os endpoints JSON de
triângulos e números associados (ver cfnum/urls.py).
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'core.settings')

application = get_wsgi_application()
