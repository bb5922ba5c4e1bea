#include "machlab/grid.hpp"

#include <cmath>

namespace machlab {

double SubBox::diameter(int dim) const {
  double d2 = 0.0;
  for (int d = 0; d < dim; ++d) d2 += (hi[d] - lo[d]) * (hi[d] - lo[d]);
  return std::sqrt(d2);
}

}  // namespace machlab
