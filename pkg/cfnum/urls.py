# cfnum/urls.py
from django.urls import path

from . import views

urlpatterns = [
    path('triangle/', views.TriangleView.as_view(), name='triangle'),
    path('assoc/', views.AssocView.as_view(), name='assoc'),
    path('convert/', views.ConvertView.as_view(), name='convert'),
    path('sequences/', views.SequenceListView.as_view(), name='sequences'),
]
