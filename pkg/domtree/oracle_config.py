from dataclasses import asdict, dataclass


@dataclass
class OracleGuards:
    """
    Size limits enforced by the brute-force oracles and the GST heuristic.

    :param max_vertices: Largest graph handled by subset-enumeration oracles (MDT, GST, MDS, DOM)
    :param max_path_vertices: Largest graph handled by the dominating path oracle (path enumeration is factorial)
    :param max_sets: Largest number of sets handled by the exact set cover oracle
    :param max_hp_vertices: Largest graph handled by the Hamiltonian path search
    :param max_roots: Number of candidate roots tried by the GST heuristic before switching to a sample
    """

    max_vertices: int = 20
    max_path_vertices: int = 14
    max_sets: int = 22
    max_hp_vertices: int = 12
    max_roots: int = 64

    def __post_init__(self):
        for name, value in asdict(self).items():
            assert (
                isinstance(value, int) and value > 0
            ), f"{name} must be an integer greater than 0"

    @property
    def as_dict(self):
        return asdict(self)


def default_oracle_guards():
    return OracleGuards()
