import factory

from npqc.circuit import NpqcSpec, ParamVector, Variant, random_params


class NpqcSpecFactory(factory.Factory):
    n_qubits = 4
    n_layers = 3
    variant = Variant.FULL

    class Meta:
        model = NpqcSpec


class YOnlySpecFactory(NpqcSpecFactory):
    n_qubits = 8
    n_layers = 4
    variant = Variant.Y_ONLY


class ParamVectorFactory(factory.Factory):
    """在 [0, 2pi]^M 上均勻抽樣的參數向量，每個實例使用不同種子"""
    spec = factory.SubFactory(NpqcSpecFactory)
    values = factory.LazyAttribute(lambda o: random_params(o.spec, o.seed).values)

    class Params:
        seed = factory.Sequence(lambda n: 1000 + n)

    class Meta:
        model = ParamVector
