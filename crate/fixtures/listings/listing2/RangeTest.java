package org.example.range;

import static org.junit.Assert.assertTrue;

import org.junit.Test;

public class RangeTest {

    @Test
    public void testIsEmpty() {
        assertTrue("(0,0)", new Range<>(Integer.class, 0, false, 0, false).isEmpty());
    }
}
