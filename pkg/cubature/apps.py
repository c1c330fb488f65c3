from django.apps import AppConfig


class CubatureConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'cubature'
    verbose_name = 'Lambda-family cubature rule'
