from django.apps import AppConfig


class EntanglementConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'entanglement'
    verbose_name = 'Two-particle states'
