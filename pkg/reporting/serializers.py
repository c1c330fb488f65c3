"""
Run-record schema of the command line, as Django REST framework serializers.

A record is ``{command, inputs, outputs, timings_ms, version}``. Fields not
present in a record are omitted from its JSON rather than written as null,
and unknown keys are rejected on input.
"""
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

COMMANDS = ['integrate', 'verify_identity', 'bounds', 'hadamard', 'convexity_check']


class StrictFieldsMixin:
    """Reject keys the serializer does not declare."""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError(
                    {key: ['Unknown field.'] for key in unknown}
                )
        return super().to_internal_value(data)


class StrictSerializer(StrictFieldsMixin, serializers.Serializer):
    pass


class LambdaFieldMixin:
    """Adds the ``lambda`` key, which cannot be declared as a class attribute."""
    lambda_required = False

    def get_fields(self):
        fields = super().get_fields()
        fields['lambda'] = serializers.FloatField(required=self.lambda_required, min_value=0.0, max_value=1.0)
        return fields


def optional_float(**kwargs):
    # absent keys are skipped on output; null is not a valid value
    return serializers.FloatField(required=False, **kwargs)


class InputsSerializer(LambdaFieldMixin, StrictSerializer):
    expression = serializers.CharField(trim_whitespace=False)
    rect = serializers.ListField(child=serializers.FloatField(), min_length=4, max_length=4)
    q_grid = serializers.ListField(child=serializers.FloatField(), required=False)
    lambda_grid = serializers.ListField(child=serializers.FloatField(min_value=0.0, max_value=1.0), required=False)
    tol = optional_float()
    max_depth = serializers.IntegerField(required=False, min_value=1)
    quad_nodes = serializers.ChoiceField(choices=[8, 16, 32], required=False)
    grid_n = serializers.IntegerField(required=False, min_value=3)


class NodeSerializer(StrictSerializer):
    x = serializers.FloatField()
    y = serializers.FloatField()
    weight = serializers.FloatField()
    value = serializers.FloatField()


class LineAveragesSerializer(StrictSerializer):
    mid_y = serializers.FloatField()
    mid_x = serializers.FloatField()
    bottom = serializers.FloatField()
    top = serializers.FloatField()
    left = serializers.FloatField()
    right = serializers.FloatField()
    error = serializers.FloatField()


class BoundRowSerializer(LambdaFieldMixin, StrictSerializer):
    lambda_required = True
    theorem = serializers.ChoiceField(choices=['T5', 'T6', 'T7', 'T6_relaxed'])
    p = optional_float()
    q = optional_float()
    value = serializers.FloatField(min_value=0.0)
    actual_error = optional_float()
    ratio = optional_float()
    hypothesis = serializers.ChoiceField(choices=['OK', 'UNSOUND-HYPOTHESIS'], required=False)
    violated = serializers.BooleanField(required=False)


class CertifiedSerializer(StrictSerializer):
    integral = serializers.FloatField()
    total_certificate = serializers.FloatField(min_value=0.0)
    panels = serializers.IntegerField(min_value=1)
    hypothesis_checked = serializers.BooleanField()
    line_error = serializers.FloatField()
    exhausted = serializers.CharField(required=False)


class ResidualRowSerializer(LambdaFieldMixin, StrictSerializer):
    lambda_required = True
    lhs = serializers.FloatField()
    rhs = serializers.FloatField()
    residual = serializers.FloatField()
    err_est = serializers.FloatField()


class WitnessSerializer(StrictSerializer):
    axis = serializers.ChoiceField(choices=['x', 'y'])
    fixed_coord = serializers.FloatField()
    t1 = serializers.FloatField()
    t2 = serializers.FloatField()
    violation = serializers.FloatField()


class ConvexityRowSerializer(StrictSerializer):
    target = serializers.CharField()
    expression = serializers.CharField()
    passed = serializers.BooleanField()
    grid_n = serializers.IntegerField(min_value=3)
    tol = serializers.FloatField()
    witness = WitnessSerializer(allow_null=True)


class ChainSerializer(StrictSerializer):
    values = serializers.ListField(child=serializers.FloatField(), min_length=5, max_length=5)
    err_est = serializers.FloatField()
    monotone = serializers.BooleanField()
    first_decrease = serializers.IntegerField(required=False, allow_null=True)


class OutputsSerializer(StrictSerializer):
    average = optional_float()
    integral = optional_float()
    true_integral = optional_float()
    actual_error = optional_float()
    line_error = optional_float()
    nodes = NodeSerializer(many=True, required=False)
    lines = LineAveragesSerializer(required=False)
    best_bound = BoundRowSerializer(required=False)
    bounds = BoundRowSerializer(many=True, required=False)
    certified = CertifiedSerializer(required=False)
    residuals = ResidualRowSerializer(many=True, required=False)
    max_residual = optional_float()
    chain = ChainSerializer(required=False)
    convexity = ConvexityRowSerializer(many=True, required=False)
    status = serializers.ChoiceField(choices=['PASS', 'FAIL'], required=False)
    error = serializers.CharField(required=False)


class RunRecordSerializer(StrictSerializer):
    command = serializers.ChoiceField(choices=COMMANDS)
    inputs = InputsSerializer()
    outputs = OutputsSerializer()
    timings_ms = serializers.FloatField(min_value=0.0)
    version = serializers.CharField()


def render_record(record: dict) -> bytes:
    """Validate ``record`` against the schema and render it as compact JSON."""
    serializer = RunRecordSerializer(data=record)
    serializer.is_valid(raise_exception=True)
    return JSONRenderer().render(RunRecordSerializer(serializer.validated_data).data)
