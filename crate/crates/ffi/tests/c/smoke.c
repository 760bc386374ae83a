#include <stdio.h>
#include <string.h>
#include "chordstate.h"

int main(void) {
    CsDiagram *d = NULL;
    if (cs_diagram_parse("3: (1,2) (1,3)", &d) != CS_STATUS_OK) return 1;
    char *value = NULL;
    if (cs_weight(d, NULL, 4, &value) != CS_STATUS_OK) return 2;
    if (strcmp(value, "4") != 0) return 3;
    cs_string_free(value);
    cs_diagram_free(d);

    if (cs_diagram_parse("2: (1,3)", &d) != CS_STATUS_PARSE) return 4;
    if (strlen(cs_last_error()) == 0) return 5;

    CsLabelling *l = NULL;
    if (cs_labelling_parse("sym:2,ext:2", &l) != CS_STATUS_OK) return 6;
    CsReport *r = NULL;
    if (cs_verify(2, 1, l, 2, &r) != CS_STATUS_OK) return 7;
    if (!cs_report_certificate(r)) return 8;
    cs_report_free(r);
    cs_labelling_free(l);
    puts("ok");
    return 0;
}
