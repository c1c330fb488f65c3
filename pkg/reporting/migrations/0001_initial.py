from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='RunLog',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(choices=[('integrate', 'Integrate'), ('verify_identity', 'Verify identity'), ('bounds', 'Bounds'), ('hadamard', 'Hadamard chain'), ('convexity_check', 'Convexity check')], max_length=30)),
                ('expression', models.TextField()),
                ('inputs', models.JSONField(default=dict)),
                ('outputs', models.JSONField(default=dict)),
                ('exit_status', models.PositiveSmallIntegerField(default=0)),
                ('timings_ms', models.FloatField(help_text='Wall time of the run in milliseconds')),
                ('version', models.CharField(max_length=20)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['command', '-created_at'], name='runlog_command_created_idx')],
            },
        ),
    ]
