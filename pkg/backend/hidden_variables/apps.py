from django.apps import AppConfig


class HiddenVariablesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hidden_variables'
    verbose_name = 'Hidden-variable checks'
