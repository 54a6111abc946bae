#ifndef FINOSC_H
#define FINOSC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Gaussian family selector.
 */
enum FinoscFamily
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  FINOSC_FAMILY_G1 = 1,
  FINOSC_FAMILY_G2 = 2,
  FINOSC_FAMILY_G3 = 3,
  FINOSC_FAMILY_G4 = 4,
  FINOSC_FAMILY_G5 = 5,
};
#ifndef __cplusplus
typedef uint32_t FinoscFamily;
#endif // __cplusplus

/*
 Hamiltonian selector for [`finosc_hamiltonian_new`].
 */
enum FinoscKind
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  FINOSC_KIND_FOURIER = 0,
  FINOSC_KIND_HARPER = 1,
  FINOSC_KIND_KRAVCHUK = 2,
  /*
   Frame-quantized oscillator; uses the family argument.
   */
  FINOSC_KIND_FRAME = 3,
  /*
   Gram–Schmidt oscillator; uses the family argument.
   */
  FINOSC_KIND_GRAM_SCHMIDT = 4,
  /*
   Uses the alpha argument.
   */
  FINOSC_KIND_DEFORMED_FOURIER = 5,
  /*
   Uses the alpha argument.
   */
  FINOSC_KIND_DEFORMED_HARPER = 6,
};
#ifndef __cplusplus
typedef uint32_t FinoscKind;
#endif // __cplusplus

/*
 Result code of every call.
 */
typedef enum {
  FINOSC_STATUS_OK = 0,
  FINOSC_STATUS_NULL_POINTER = 1,
  FINOSC_STATUS_INVALID_ARGUMENT = 2,
  FINOSC_STATUS_BUFFER_TOO_SMALL = 3,
  FINOSC_STATUS_COMPUTE_FAILED = 4,
  FINOSC_STATUS_PANIC = 5,
} FinoscStatus;

/*
 Opaque Hermitian (or general) d × d operator.
 */
typedef struct FinoscOperator FinoscOperator;

/*
 Opaque eigendecomposition with ascending eigenvalues.
 */
typedef struct FinoscSpectrum FinoscSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the last error message of this thread into `buf` (NUL-terminated,
 truncated to `len`). Returns the full message length without the NUL.

 # Safety
 `buf` must be null or point to `len` writable bytes.
 */
size_t finosc_last_error(char *buf, size_t len);

/*
 Library version as a static NUL-terminated string.
 */
const char *finosc_version(void);

/*
 Writes the finite Gaussian of `family` (a [`FinoscFamily`] code) into
 `out[0..d]`. `kappa` is ignored for g4 and g5. With `normalize` nonzero the
 result has unit norm.

 # Safety
 `out` must point to `len` writable doubles.
 */
FinoscStatus finosc_gaussian(size_t d,
                             uint32_t family,
                             double kappa,
                             int32_t normalize,
                             double *out,
                             size_t len);

/*
 Normalized Kravchuk function value at `(m, n)`, both in `-j..=j`.

 # Safety
 `out` must point to one writable double.
 */
FinoscStatus finosc_kravchuk_function(size_t d, int64_t m, int64_t n, double *out);

/*
 Discrete Wigner function of the state `(re, im)` written row-major over
 `n` then `m` into `out[0..d*d]`.

 # Safety
 `re`, `im` must point to `d` doubles, `out` to `out_len` writable doubles.
 */
FinoscStatus finosc_wigner(size_t d,
                           const double *re,
                           const double *im,
                           double *out,
                           size_t out_len);

/*
 Builds an oscillator Hamiltonian. `family` is read for the frame and
 Gram–Schmidt kinds, `alpha` for the deformed kinds.

 # Safety
 `out` must point to a writable handle slot.
 */
FinoscStatus finosc_hamiltonian_new(size_t d,
                                    uint32_t kind,
                                    uint32_t family,
                                    double alpha,
                                    FinoscOperator **out);

/*
 Grid size of an operator, or 0 for a null handle.

 # Safety
 `op` must be null or a live handle.
 */
size_t finosc_operator_dim(const FinoscOperator *op);

/*
 Matrix element `<row|op|col>` with row and column in `-j..=j`.

 # Safety
 `op` must be a live handle; `re`, `im` must be writable.
 */
FinoscStatus finosc_operator_element(const FinoscOperator *op,
                                     int64_t row,
                                     int64_t col,
                                     double *re,
                                     double *im);

/*
 Releases an operator. Null is accepted.

 # Safety
 `op` must be null or a handle not yet freed.
 */
void finosc_operator_free(FinoscOperator *op);

/*
 Eigendecomposition of a Hermitian operator.

 # Safety
 `op` must be a live handle; `out` a writable handle slot.
 */
FinoscStatus finosc_eigendecompose(const FinoscOperator *op, FinoscSpectrum **out);

/*
 Number of eigenvalues, or 0 for a null handle.

 # Safety
 `spec` must be null or a live handle.
 */
size_t finosc_spectrum_len(const FinoscSpectrum *spec);

/*
 Releases a spectrum. Null is accepted.

 # Safety
 `spec` must be null or a handle not yet freed.
 */
void finosc_spectrum_free(FinoscSpectrum *spec);

/*
 Ascending eigenvalues into `out[0..d]`.

 # Safety
 `spec` must be a live handle; `out` must point to `len` writable doubles.
 */
FinoscStatus finosc_spectrum_eigenvalues(const FinoscSpectrum *spec, double *out, size_t len);

/*
 Eigenvector `k` (ascending order) into split real/imaginary buffers.

 # Safety
 `spec` must be a live handle; `re`, `im` must point to `len` writable doubles.
 */
FinoscStatus finosc_spectrum_eigenvector(const FinoscSpectrum *spec,
                                         size_t k,
                                         double *re,
                                         double *im,
                                         size_t len);

/*
 Evolves `psi` to time `t` under the decomposed Hamiltonian, e^{-iHt} psi.

 # Safety
 `spec` must be a live handle; input buffers hold `len` doubles, output
 buffers `len` writable doubles, with `len` equal to d.
 */
FinoscStatus finosc_evolve(const FinoscSpectrum *spec,
                           const double *re,
                           const double *im,
                           size_t len,
                           double t,
                           double *out_re,
                           double *out_im);

/*
 Runs the self-check suite at dimension `d`. Writes the number of checks
 and failures; returns `ComputeFailed` when any check fails.

 # Safety
 `total` and `failed` must each be null or writable.
 */
FinoscStatus finosc_verify(size_t d, double tol, size_t *total, size_t *failed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FINOSC_H */
