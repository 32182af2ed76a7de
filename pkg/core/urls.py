# core/urls.py
from django.urls import path, include

urlpatterns = [
    # Todas as rotas JSON ficam no app cfnum.
    path('', include('cfnum.urls')),
]
