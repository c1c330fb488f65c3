from django.apps import AppConfig


class ExprmodelConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'exprmodel'
    verbose_name = 'Expression model'
