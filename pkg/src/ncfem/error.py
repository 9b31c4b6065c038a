from panoptes.utils.error import PanError


class NcfemError(PanError):

    """ Base class for all errors raised by ncfem. """

    def __init__(self, msg='Error in ncfem', **kwargs):
        super().__init__(msg, **kwargs)


class InvalidGridSpecError(NcfemError, ValueError):

    """ Error for non-positive cell counts or domain lengths. """

    def __init__(self, msg='Invalid grid specification', **kwargs):
        super().__init__(msg, **kwargs)


class UnsupportedDimensionError(NcfemError):

    """ Error for an operation that is not available in the mesh dimension. """

    def __init__(self, msg='Operation not supported in this dimension', **kwargs):
        super().__init__(msg, **kwargs)


class UnsupportedOptionError(NcfemError):

    """ Error for a solution scheme that cannot run on the given mesh. """

    def __init__(self, msg='Scheme option not supported for this mesh', **kwargs):
        super().__init__(msg, **kwargs)


class ParityError(NcfemError):

    """ Error for a cell count parity requirement that is not met. """

    def __init__(self, msg='Cell counts have the wrong parity', **kwargs):
        super().__init__(msg, **kwargs)


class NotRepresentableError(ParityError):

    """ Error for an alternating function that is not well defined on the mesh. """

    def __init__(self, msg='Alternating function not representable on this mesh', **kwargs):
        super().__init__(msg, **kwargs)


class TooLargeError(NcfemError):

    """ Error for a dense computation above the configured size cap. """

    def __init__(self, msg='Problem too large for a dense rank computation', **kwargs):
        super().__init__(msg, **kwargs)


class RankUnstableError(NcfemError):

    """ Error for a numerical rank that depends on the tolerance. """

    def __init__(self, msg='Numerical rank is not stable under tolerance changes', **kwargs):
        super().__init__(msg, **kwargs)


class InconsistentSystemError(NcfemError):

    """ Error for a right hand side with a component in the kernel. """

    def __init__(self, msg='Right hand side is not in the range of the matrix', **kwargs):
        super().__init__(msg, **kwargs)


class IncompatibleLoadError(InconsistentSystemError):

    """ Error for a periodic load whose integral is far from zero. """

    def __init__(self, msg='Load does not integrate to zero', **kwargs):
        super().__init__(msg, **kwargs)


class MeshMismatchError(NcfemError):

    """ Error for objects that live on different meshes. """

    def __init__(self, msg='Objects are defined on different meshes', **kwargs):
        super().__init__(msg, **kwargs)


class FaceIndexError(NcfemError, IndexError):

    """ Error for a face id outside the mesh. """

    def __init__(self, msg='Face id out of range', **kwargs):
        super().__init__(msg, **kwargs)


class PublishedValuesError(NcfemError):

    """ Error for results that disagree with the published reference values. """

    def __init__(self, msg='Results disagree with the reference values', **kwargs):
        super().__init__(msg, **kwargs)
