#!/usr/bin/env python
"""Ponto de entrada do cfnum.

    python manage.py triangle --family t2 --n 6
    python manage.py verify --suite all
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'core.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Django não encontrado. Instale as dependências com "
            "pip install -r requirements.txt (de preferência num ambiente virtual)."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
