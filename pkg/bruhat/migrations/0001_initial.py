# Generated by Django 5.1.5 on 2026-10-19 10:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='BruhatRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('n', models.PositiveSmallIntegerField()),
                ('status', models.CharField(choices=[('running', 'Running'), ('budget_exceeded', 'Stopped at node budget'), ('complete', 'Complete')], default='running', max_length=20)),
                ('node_count', models.PositiveIntegerField(default=0)),
                ('cover_count', models.PositiveIntegerField(default=0)),
                ('frontier', models.JSONField(default=list, help_text='Discovered but unexpanded classes as [triples, sample word] pairs')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='BruhatCoverRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('lower', models.JSONField()),
                ('upper', models.JSONField()),
                ('added_triple', models.JSONField()),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='covers', to='bruhat.bruhatrun')),
            ],
        ),
        migrations.CreateModel(
            name='BruhatNodeRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('label', models.CharField(max_length=255)),
                ('triples', models.JSONField()),
                ('representative', models.JSONField()),
                ('majority', models.CharField(max_length=255)),
                ('class_size', models.PositiveIntegerField()),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='nodes', to='bruhat.bruhatrun')),
            ],
            options={
                'unique_together': {('run', 'label')},
            },
        ),
    ]
