# Generated by Django 5.2.3

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='ScanRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('kind', models.CharField(choices=[('scan-t1', 'Dependência φ(P)^r = u·ψ(P)^s'), ('scan-t2', 'Dependência com r, s fixos'), ('hyp-scan', 'Quase-integralidade'), ('constants', 'Constantes empíricas')], max_length=16)),
                ('random_seed', models.BigIntegerField(default=0)),
                ('config_json', models.JSONField()),
                ('report_json', models.JSONField()),
                ('hits', models.PositiveIntegerField(default=0)),
                ('budget_exhausted', models.BooleanField(default=False)),
                ('digest', models.CharField(max_length=64, verbose_name='sha256 do relatório')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Execução de varredura',
                'verbose_name_plural': 'Execuções de varredura',
                'ordering': ('-created_at', '-id'),
                'indexes': [models.Index(fields=['kind', 'created_at'], name='scanrun_kind_created_idx')],
            },
        ),
    ]
