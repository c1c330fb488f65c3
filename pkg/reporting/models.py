from django.db import models


class RunLog(models.Model):
    """One command-line run stored with ``--save``."""
    COMMAND_CHOICES = [
        ('integrate', 'Integrate'),
        ('verify_identity', 'Verify identity'),
        ('bounds', 'Bounds'),
        ('hadamard', 'Hadamard chain'),
        ('convexity_check', 'Convexity check'),
    ]

    command = models.CharField(max_length=30, choices=COMMAND_CHOICES)
    expression = models.TextField()
    inputs = models.JSONField(default=dict)
    outputs = models.JSONField(default=dict)
    exit_status = models.PositiveSmallIntegerField(default=0)
    timings_ms = models.FloatField(help_text="Wall time of the run in milliseconds")
    version = models.CharField(max_length=20)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['command', '-created_at'], name='runlog_command_created_idx'),
        ]

    def __str__(self):
        return f"{self.command} {self.expression} (exit {self.exit_status})"

    @classmethod
    def from_record(cls, record: dict, exit_status: int = 0) -> 'RunLog':
        return cls.objects.create(
            command=record['command'],
            expression=record['inputs']['expression'],
            inputs=record['inputs'],
            outputs=record['outputs'],
            exit_status=exit_status,
            timings_ms=record['timings_ms'],
            version=record['version'],
        )
