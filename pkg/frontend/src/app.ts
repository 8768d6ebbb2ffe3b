import { FINDINGS_POLL_MS, pollFindings, renderFindingsPanel } from './findings.js';
import { renderMessageList } from './messages.js';
import { showReminder } from './reminders.js';
import { sendMessage } from './stream.js';
import { initialState, type UiSessionState } from './types.js';

export interface AppElements {
  messages: HTMLElement;
  reminders: HTMLElement;
  findings: HTMLElement;
  reconnectBanner: HTMLElement;
  promptInput: HTMLInputElement | HTMLTextAreaElement;
  sendButton: HTMLButtonElement;
  styleToggle: HTMLInputElement;
}

// Wires the chat surface to the assistant service. The UI never calls a
// model directly; all traffic goes through the service endpoints.
export async function startApp(baseUrl: string, el: AppElements): Promise<() => void> {
  const resp = await fetch(`${baseUrl}/sessions`, {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify({}),
  });
  const { session_id: sessionId } = (await resp.json()) as { session_id: string };
  let state: UiSessionState = initialState(sessionId);

  const render = (next: UiSessionState) => {
    state = next;
    renderMessageList(el.messages, state.messages);
    el.reconnectBanner.hidden = !state.disconnected;
    while (state.pendingReminders.length > 0) {
      const [text, ...rest] = state.pendingReminders;
      state = { ...state, pendingReminders: rest };
      showReminder(el.reminders, text, state.notificationStyle, {
        sendControl: el.sendButton,
        onDismiss: (record) => {
          state = { ...state, dismissals: [...state.dismissals, record] };
        },
      });
    }
  };

  el.styleToggle.addEventListener('change', () => {
    state = { ...state, notificationStyle: el.styleToggle.checked ? 'modal' : 'popup' };
  });

  el.sendButton.addEventListener('click', () => {
    const text = el.promptInput.value.trim();
    if (!text || state.turnActive) return;
    el.promptInput.value = '';
    void sendMessage(baseUrl, state, text, { onState: render });
  });

  const refreshFindings = async () => {
    const { findings, stale } = await pollFindings(baseUrl, sessionId);
    state = { ...state, findings: stale ? state.findings : findings, findingsStale: stale };
    renderFindingsPanel(el.findings, state.findings, {
      promptInput: el.promptInput,
      stale: state.findingsStale,
    });
  };
  await refreshFindings();
  const timer = setInterval(() => void refreshFindings(), FINDINGS_POLL_MS);
  return () => clearInterval(timer);
}
