#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rfis {

// Dense row-major matrix of doubles. Throughout the library the row index
// runs along x (index i) and the column index along y (index j).
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        Matrix m(static_cast<int>(rows.size()),
                 rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
        int i = 0;
        for (const auto& row : rows) {
            int j = 0;
            for (double value : row) m(i, j++) = value;
            ++i;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    bool operator==(const Matrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> v_;
};

}  // namespace rfis
