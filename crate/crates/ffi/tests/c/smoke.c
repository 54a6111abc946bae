#include <math.h>
#include <stdio.h>
#include "finosc.h"

int main(void) {
    double g[3];
    if (finosc_gaussian(3, FINOSC_FAMILY_G4, 0.0, 1, g, 3) != FINOSC_STATUS_OK) return 1;
    if (fabs(g[1] - 2.0 / sqrt(6.0)) > 1e-15) return 2;

    if (finosc_gaussian(4, FINOSC_FAMILY_G1, 1.0, 1, g, 3) != FINOSC_STATUS_INVALID_ARGUMENT) return 3;
    char msg[128];
    if (finosc_last_error(msg, sizeof msg) == 0) return 4;

    FinoscOperator *h = NULL;
    FinoscSpectrum *s = NULL;
    if (finosc_hamiltonian_new(3, FINOSC_KIND_KRAVCHUK, 0, 0.0, &h) != FINOSC_STATUS_OK) return 5;
    if (finosc_eigendecompose(h, &s) != FINOSC_STATUS_OK) return 6;
    double ev[3];
    if (finosc_spectrum_eigenvalues(s, ev, 3) != FINOSC_STATUS_OK) return 7;
    for (int k = 0; k < 3; k++) {
        if (fabs(ev[k] - (k + 0.5)) > 1e-10) return 8;
    }
    finosc_spectrum_free(s);
    finosc_operator_free(h);
    printf("ok %s\n", finosc_version());
    return 0;
}
