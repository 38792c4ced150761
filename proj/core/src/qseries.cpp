// Explicit instantiations of the truncated q-series template for the
// coefficient rings used across the library.
#include "modcurve/qseries.hpp"

#include "modcurve/numberfield.hpp"

namespace modcurve {

template class QSeries<Rat>;
template class QSeries<Int>;
template class QSeries<NumberFieldElement>;

}  // namespace modcurve
