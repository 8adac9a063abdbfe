#include "csst/dataset.hpp"

#include <cmath>

#include "csst/errors.hpp"

namespace csst {

Dataset make_dataset(Matrix points, std::vector<std::string> dim_names) {
    if (points.rows < 1 || points.cols < 1) {
        throw InvalidParameter("dataset must have at least one row and one column");
    }
    if (points.data.size() != points.rows * points.cols) {
        throw InvalidParameter("dataset storage size does not match rows*cols");
    }
    for (double v : points.data) {
        if (!std::isfinite(v)) {
            throw InvalidParameter("dataset entries must be finite");
        }
    }
    if (!dim_names.empty() && dim_names.size() != points.cols) {
        throw InvalidParameter("dim_names must be empty or match the dimension");
    }
    return Dataset{std::move(points), std::move(dim_names)};
}

} // namespace csst
