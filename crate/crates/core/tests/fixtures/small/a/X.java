package a;

import b.Z;
import org.lib.Lib;

public class X implements Z {
    private Y y;
    private String label;

    public Lib lib() {
        return null;
    }
}
