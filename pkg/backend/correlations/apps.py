from django.apps import AppConfig


class CorrelationsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'correlations'
    verbose_name = 'Correlations and CHSH'
